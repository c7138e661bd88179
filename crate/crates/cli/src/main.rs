//! `tencode`: exact invariants of tensor codes from the command line.
//!
//! Exit status: 0 on success, 1 on input errors (and failed golden checks),
//! 2 when a search budget runs out. Budget failures still print a report with
//! every value finished so far plus bounds for the rest.

mod commands;
mod golden;
mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use tencode_core::budget::{DEFAULT_OBJECTS, DEFAULT_RANK_NODES};
use tencode_core::json::SCHEMA;
use tencode_core::{Budget, Error, Family, Result, TensorCode};

use commands::Report;

#[derive(Parser)]
#[command(
    name = "tencode",
    version,
    about = "Exact invariants of tensor codes over finite fields"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Object budget for enumerations (overrides TENCODE_BUDGET)
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Node budget for each tensor-rank search
    #[arg(long, global = true)]
    rank_nodes: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, closure, minimum distance, maximum rank and tensor rank
    Params { file: PathBuf },
    /// Generalized tensor weights t_j, or s_j with --dual
    Weights {
        file: PathBuf,
        /// cl, ps, dcl, delsarte or ravagnani
        #[arg(long)]
        family: String,
        #[arg(long)]
        dual: bool,
    },
    /// Binomial moments and the weight distribution, checked by Möbius inversion
    Moments {
        file: PathBuf,
        #[arg(long)]
        family: String,
    },
    /// Moments of the code against moments of its dual
    Macwilliams {
        file: PathBuf,
        #[arg(long)]
        family: String,
    },
    /// j-TBMD classification
    Tbmd {
        file: PathBuf,
        #[arg(long)]
        family: String,
    },
    /// Roth's construction with alpha = beta = (1, x, ..., x^(mu-1)) and omega = (1, x, ..., x^(m-1))
    Roth {
        /// Index range of alpha and beta
        #[arg(long)]
        mu: usize,
        /// Extension field: gf4, 8, 2^3 or {"p":2,"m":3,"modulus":[1,1,0,1]}
        #[arg(long)]
        field: String,
        /// Opaque label component, echoed in the report
        #[arg(long)]
        nu: Option<String>,
        /// Opaque label component, echoed in the report
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Regression over the worked examples
    VerifySuite {
        /// Read fixtures from this directory instead of the built-in copies
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Run only the named examples
        #[arg(long = "only")]
        only: Vec<String>,
        /// List the example names and exit
        #[arg(long)]
        list: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Params { .. } => "params",
            Command::Weights { .. } => "weights",
            Command::Moments { .. } => "moments",
            Command::Macwilliams { .. } => "macwilliams",
            Command::Tbmd { .. } => "tbmd",
            Command::Roth { .. } => "roth",
            Command::VerifySuite { .. } => "verify-suite",
        }
    }
}

fn limits(cli: &Cli) -> Result<(u64, u64)> {
    let objects = match cli.budget {
        Some(b) => b,
        None => match std::env::var("TENCODE_BUDGET") {
            Ok(s) => s.trim().parse::<u64>().map_err(|_| {
                Error::Invalid(format!("TENCODE_BUDGET={s:?} is not a positive integer"))
            })?,
            Err(_) => DEFAULT_OBJECTS,
        },
    };
    let nodes = cli.rank_nodes.unwrap_or(DEFAULT_RANK_NODES);
    if objects == 0 || nodes == 0 {
        return Err(Error::Invalid("budgets must be positive".into()));
    }
    Ok((objects, nodes))
}

fn load(path: &Path) -> Result<TensorCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    tencode_core::json::parse_code(&text)
}

/// Ok(false) means the command ran but a golden check failed.
fn run(cli: &Cli, out: &mut Report) -> Result<bool> {
    let (objects, nodes) = limits(cli)?;
    let budget = Budget::new(objects, nodes);
    match &cli.command {
        Command::Params { file } => commands::params(&load(file)?, &budget, out)?,
        Command::Weights { file, family, dual } => {
            let family = Family::parse(family)?;
            commands::weights(&load(file)?, family, *dual, &budget, out)?
        }
        Command::Moments { file, family } => {
            commands::moments(&load(file)?, Family::parse(family)?, &budget, out)?
        }
        Command::Macwilliams { file, family } => {
            commands::macwilliams(&load(file)?, Family::parse(family)?, &budget, out)?
        }
        Command::Tbmd { file, family } => {
            commands::tbmd(&load(file)?, Family::parse(family)?, &budget, out)?
        }
        Command::Roth {
            mu,
            field,
            nu,
            sigma,
        } => {
            let field = commands::parse_field_arg(field)?;
            let label = (nu.is_some() || sigma.is_some()).then(|| {
                let part = |x: &Option<String>| x.clone().unwrap_or_else(|| "-".into());
                format!("C({mu},{},{};{})", part(nu), part(sigma), field.p())
            });
            commands::roth(&field, *mu, label, out)?
        }
        Command::VerifySuite {
            fixtures,
            only,
            list,
        } => {
            if *list {
                out.insert("examples".into(), json!(golden::names()));
                return Ok(true);
            }
            let lim = golden::Limits {
                objects,
                rank_nodes: nodes,
            };
            let (entries, ok) = golden::run(fixtures.as_deref(), &lim, only)?;
            out.insert("verified".into(), json!(ok));
            out.insert("examples".into(), Value::Array(entries));
            return Ok(ok);
        }
    }
    Ok(true)
}

fn error_json(e: &Error) -> Value {
    let mut err = json!({"code": e.code(), "message": e.to_string()});
    if let Error::Json { line, column, .. } = e {
        err["line"] = json!(line);
        err["column"] = json!(column);
    }
    err
}

fn emit(format: Format, report: &Report) {
    let text = match format {
        Format::Json => render::json(&Value::Object(report.clone())) + "\n",
        Format::Table => render::table(report),
    };
    // a closed pipe (e.g. `| head`) is not worth a panic
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(cli.command.name()));
    let result = run(&cli, &mut out);
    match result {
        Ok(ok) => {
            emit(cli.format, &out);
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) if e.is_budget() => {
            out.insert("complete".into(), json!(false));
            out.insert("error".into(), error_json(&e));
            emit(cli.format, &out);
            ExitCode::from(2)
        }
        Err(e) => {
            let mut err = Map::new();
            err.insert("schema".into(), json!(SCHEMA));
            err.insert("command".into(), json!(cli.command.name()));
            err.insert("error".into(), error_json(&e));
            match cli.format {
                Format::Json => emit(Format::Json, &err),
                Format::Table => eprintln!("error [{}]: {e}", e.code()),
            }
            ExitCode::from(1)
        }
    }
}
