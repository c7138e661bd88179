//! Report builders. Each one writes into `out` as results become available,
//! so a budget failure still leaves every finished value in the report.

use serde_json::{json, Map, Value};
use tencode_core::invariants::{generalized_dual_weight, generalized_weight};
use tencode_core::json::{
    big_json, big_table_json, code_json, field_json, rational_json, subspace_json, vector_json,
};
use tencode_core::moments::{
    binomial_moments, bound_violation, check_inversion, macwilliams_moments, tbmd_classify,
};
use tencode_core::roth::{
    build_matrices, roth_code_from_checks, roth_code_from_generators, RothParams,
};
use tencode_core::{Budget, Error, Family, Field, Result, Subspace, TensorCode};

pub type Report = Map<String, Value>;

fn put(out: &mut Report, key: &str, v: Value) {
    out.insert(key.to_string(), v);
}

pub fn params(code: &TensorCode, budget: &Budget, out: &mut Report) -> Result<()> {
    let n = code.n();
    put(out, "field", field_json(code.field()));
    put(out, "dims", json!(code.dims()));
    put(out, "n", json!(n));
    put(out, "k", json!(code.k()));
    let closure = code.closure();
    put(
        out,
        "closure",
        Value::Array(closure.iter().map(subspace_json).collect()),
    );
    put(
        out,
        "closure_dims",
        json!(closure.iter().map(Subspace::dim).collect::<Vec<_>>()),
    );
    put(out, "closure_dim", json!(code.closure_dim()));
    if code.k() == 0 {
        put(out, "d", Value::Null);
        put(out, "maxrk", Value::Null);
        put(out, "trk", json!(0));
        return Ok(());
    }
    // trivial bounds, reported for whatever is still open if a search gives up
    let rank_cap = n / code.shape().max_dim();
    let mut bounds = Map::new();
    bounds.insert("d".into(), json!([1, rank_cap]));
    bounds.insert("maxrk".into(), json!([1, rank_cap]));
    bounds.insert("trk".into(), json!([code.k(), n.min(code.k() * rank_cap)]));
    let steps: [(&str, fn(&TensorCode, &Budget) -> Result<usize>); 3] = [
        ("d", TensorCode::min_distance),
        ("maxrk", TensorCode::max_rank),
        ("trk", TensorCode::tensor_rank),
    ];
    for (key, f) in steps {
        match f(code, budget) {
            Ok(v) => {
                put(out, key, json!(v));
                bounds.remove(key);
            }
            Err(e) => {
                if let Error::Undecided { lower, upper, .. } = e {
                    bounds.insert(key.into(), json!([lower, upper]));
                }
                put(out, "bounds", Value::Object(bounds));
                return Err(e);
            }
        }
    }
    Ok(())
}

/// `t_j` (or `s_j` with `dual`) for `j = 1..=k`, one index at a time.
pub fn weights(
    code: &TensorCode,
    family: Family,
    dual: bool,
    budget: &Budget,
    out: &mut Report,
) -> Result<()> {
    if dual {
        family.dual()?;
    }
    put(out, "family", json!(family.name()));
    put(out, "dual", json!(dual));
    put(out, "n", json!(code.n()));
    put(out, "k", json!(code.k()));
    let strict = family == Family::Perfect && !dual;
    let mut known: Vec<usize> = Vec::new();
    put(out, "profile", json!(known));
    for j in 1..=code.k() {
        let r = if dual {
            generalized_dual_weight(code, family, j, budget)
        } else {
            generalized_weight(code, family, j, budget)
        };
        match r {
            Ok(t) => {
                known.push(t);
                put(out, "profile", json!(known));
            }
            Err(e) => {
                let bounds: Vec<Value> = (j..=code.k())
                    .map(|i| {
                        let lo = known.last().map_or(i, |&t| {
                            if strict {
                                t + (i - known.len())
                            } else {
                                t.max(i)
                            }
                        });
                        json!({"j": i, "lower": lo, "upper": code.n()})
                    })
                    .collect();
                put(out, "bounds", Value::Array(bounds));
                return Err(e);
            }
        }
    }
    Ok(())
}

fn cell(a: usize, j: usize) -> Value {
    json!({"a": a, "j": j})
}

pub fn moments(code: &TensorCode, family: Family, budget: &Budget, out: &mut Report) -> Result<()> {
    put(out, "family", json!(family.name()));
    put(out, "n", json!(code.n()));
    put(out, "k", json!(code.k()));
    let table = binomial_moments(code, family, budget)?;
    put(out, "moments", big_table_json(&table.values));
    put(out, "dual_moments", big_table_json(&table.dual_values));
    put(
        out,
        "family_sizes",
        Value::Array(table.sizes.iter().map(big_json).collect()),
    );
    let inv = check_inversion(code, family, budget)?;
    put(out, "distribution", big_table_json(&inv.direct.values));
    put(
        out,
        "unplaced",
        Value::Array(inv.direct.unplaced.iter().map(big_json).collect()),
    );
    put(out, "inverted", big_table_json(&inv.inverted));
    put(out, "verified", json!(inv.verified));
    put(
        out,
        "first_counterexample",
        inv.first_counterexample
            .map_or(Value::Null, |(a, j)| cell(a, j)),
    );
    Ok(())
}

pub fn macwilliams(
    code: &TensorCode,
    family: Family,
    budget: &Budget,
    out: &mut Report,
) -> Result<()> {
    put(out, "family", json!(family.name()));
    put(out, "n", json!(code.n()));
    put(out, "k", json!(code.k()));
    let r = macwilliams_moments(code, family, budget)?;
    put(out, "moments", big_table_json(&r.moments));
    put(out, "dual_moments", big_table_json(&r.dual_moments));
    put(out, "cells_checked", json!(r.cells_checked));
    put(out, "pairs_checked", json!(r.pairs_checked));
    put(out, "sizes_match", json!(r.sizes_match));
    put(
        out,
        "dimension_violation",
        r.dimension_violation.as_ref().map_or(Value::Null, |v| {
            json!({"a": v.a, "anticode": v.anticode, "code_side": v.code_side, "dual_side": v.dual_side})
        }),
    );
    put(out, "verified", json!(r.verified));
    put(
        out,
        "first_counterexample",
        r.first_counterexample.as_ref().map_or(
            Value::Null,
            |c| json!({"a": c.a, "j": c.j, "lhs": big_json(&c.lhs), "rhs": rational_json(&c.rhs)}),
        ),
    );
    Ok(())
}

pub fn tbmd(code: &TensorCode, family: Family, budget: &Budget, out: &mut Report) -> Result<()> {
    put(out, "family", json!(family.name()));
    put(out, "n", json!(code.n()));
    put(out, "k", json!(code.k()));
    let r = tbmd_classify(code, family, budget)?;
    put(out, "weights", json!(r.weights));
    put(out, "dual_s1", json!(r.dual_s1));
    put(out, "margins", json!(r.margins));
    put(out, "tbmd", json!(r.tbmd));
    put(out, "minimal", json!(r.minimal));
    let table = binomial_moments(code, family, budget)?;
    let v = bound_violation(&table, &r.weights, r.dual_s1);
    put(out, "verified", json!(v.is_none()));
    put(
        out,
        "first_counterexample",
        v.map_or(Value::Null, |v| {
            json!({"a": v.a, "j": v.j, "expected": big_json(&v.expected), "found": big_json(&v.found)})
        }),
    );
    Ok(())
}

/// Accepts `gf4`, `8`, `2^3` or a JSON field descriptor.
pub fn parse_field_arg(s: &str) -> Result<Field> {
    let s = s.trim();
    if s.starts_with('{') {
        return tencode_core::json::parse_field(s);
    }
    let body = s
        .strip_prefix("gf")
        .or_else(|| s.strip_prefix("GF"))
        .unwrap_or(s);
    let bad = || Error::Invalid(format!("cannot read field {s:?}"));
    let (p, m) = match body.split_once('^') {
        Some((p, m)) => (
            p.parse::<u32>().map_err(|_| bad())?,
            m.parse::<u32>().map_err(|_| bad())?,
        ),
        None => {
            let q: u64 = body.parse().map_err(|_| bad())?;
            let (p, m) = tencode_core::qcomb::prime_power(q).ok_or(Error::NotPrimePower(q))?;
            (p as u32, m)
        }
    };
    Field::with_order(p, m)
}

fn matrix_json(field: &Field, m: &[Vec<u8>]) -> Value {
    Value::Array(m.iter().map(|r| vector_json(field, r)).collect())
}

pub fn roth(field: &Field, mu: usize, label: Option<String>, out: &mut Report) -> Result<()> {
    let params = RothParams::powers(field, mu)?;
    let el = |v: &[tencode_core::FieldElement]| {
        vector_json(field, &v.iter().map(|x| x.value()).collect::<Vec<_>>())
    };
    if let Some(l) = label {
        put(out, "label", json!(l));
    }
    put(out, "field", field_json(field));
    put(out, "mu", json!(mu));
    put(out, "alpha", el(params.alpha()));
    put(out, "beta", el(params.beta()));
    put(out, "omega", el(params.omega()));
    let mats = build_matrices(&params)?;
    put(out, "s", json!(mats.s));
    put(out, "s_bar", json!(mats.s_bar));
    put(out, "alpha_dual", el(&mats.alpha_dual));
    put(out, "beta_dual", el(&mats.beta_dual));
    put(out, "h", matrix_json(field, &mats.h));
    put(out, "g", matrix_json(field, &mats.g));
    let from_g = roth_code_from_generators(&params, &mats)?;
    let from_h = roth_code_from_checks(&params, &mats)?;
    put(out, "routes_agree", json!(from_g == from_h));
    if from_g != from_h {
        return Err(Error::Inconsistent(
            "generator and parity-check descriptions differ".into(),
        ));
    }
    put(out, "k", json!(from_g.k()));
    put(out, "code", code_json(&from_g));
    Ok(())
}
