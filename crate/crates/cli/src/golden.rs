//! Golden regression over the worked examples shipped in `fixtures/`.

use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{json, Value};
use tencode_core::anticode::{intersection_dim, is_member};
use tencode_core::invariants::{generalized_dual_weight, generalized_weight, weights};
use tencode_core::json::{parse_code_doc, subspace_json, vector_json, CodeDoc};
use tencode_core::moments::{is_jbmd_r2, tbmd_classify};
use tencode_core::qcomb::subspace_mobius;
use tencode_core::roth::{build_matrices, roth_code, RothParams};
use tencode_core::{
    Anticode, Budget, Error, Family, Field, Result, Shape, Subspace, Tensor, TensorCode,
};

const FIXTURES: &[(&str, &str)] = &[
    ("closure.json", include_str!("../fixtures/closure.json")),
    (
        "gabidulin_c.json",
        include_str!("../fixtures/gabidulin_c.json"),
    ),
    (
        "gabidulin_d.json",
        include_str!("../fixtures/gabidulin_d.json"),
    ),
    (
        "dual_perfect.json",
        include_str!("../fixtures/dual_perfect.json"),
    ),
    ("matrix_m.json", include_str!("../fixtures/matrix_m.json")),
    ("matrix_n.json", include_str!("../fixtures/matrix_n.json")),
    ("symmetric.json", include_str!("../fixtures/symmetric.json")),
    ("roth_gf4.json", include_str!("../fixtures/roth_gf4.json")),
    ("roth_gf8.json", include_str!("../fixtures/roth_gf8.json")),
];

pub struct Limits {
    pub objects: u64,
    pub rank_nodes: u64,
}

struct Ctx<'a> {
    dir: Option<&'a Path>,
    limits: &'a Limits,
}

impl Ctx<'_> {
    fn budget(&self) -> Budget {
        Budget::new(self.limits.objects, self.limits.rank_nodes)
    }

    fn doc(&self, name: &str) -> Result<CodeDoc> {
        let text = match self.dir {
            Some(d) => std::fs::read_to_string(d.join(name)).map_err(|e| {
                Error::Invalid(format!("cannot read {}: {e}", d.join(name).display()))
            })?,
            None => FIXTURES
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, t)| t.to_string())
                .ok_or_else(|| Error::Invalid(format!("no fixture {name}")))?,
        };
        parse_code_doc(&text)
    }

    fn code(&self, name: &str) -> Result<TensorCode> {
        self.doc(name)?.build()
    }

    /// The generators as written, not reduced.
    fn generators(&self, name: &str) -> Result<Vec<Tensor>> {
        let doc = self.doc(name)?;
        let field = doc.field.build()?;
        doc.basis
            .iter()
            .map(|t| t.build(&field, Some(&doc.dims)))
            .collect()
    }
}

/// `expected: None` records a computed value without judging it.
struct Check {
    what: String,
    expected: Option<Value>,
    found: Value,
}

impl Check {
    fn passed(&self) -> bool {
        self.expected.as_ref().is_none_or(|e| *e == self.found)
    }
}

fn check(what: &str, expected: impl Into<Value>, found: impl Into<Value>) -> Check {
    Check {
        what: what.to_string(),
        expected: Some(expected.into()),
        found: found.into(),
    }
}

fn record(what: &str, found: impl Into<Value>) -> Check {
    Check {
        what: what.to_string(),
        expected: None,
        found: found.into(),
    }
}

fn span(field: &Field, n: usize, rows: &[&[u8]]) -> Result<Subspace> {
    Subspace::span(
        field,
        n,
        &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
    )
}

fn spaces(list: &[Subspace]) -> Value {
    Value::Array(list.iter().map(subspace_json).collect())
}

fn fiber_set(x: &Tensor, mode: usize) -> Result<Value> {
    let set: BTreeSet<Vec<u8>> = x.fibers(mode)?.into_iter().collect();
    Ok(json!(set.into_iter().collect::<Vec<_>>()))
}

fn sorted(mut v: Vec<Vec<u8>>) -> Value {
    v.sort();
    json!(v)
}

fn closure_example(ctx: &Ctx) -> Result<Vec<Check>> {
    let f3 = Field::prime(3)?;
    let gens = ctx.generators("closure.json")?;
    let (x, y, z) = (&gens[0], &gens[1], &gens[2]);
    let code = ctx.code("closure.json")?;
    let b = ctx.budget();
    let expect = |a: &[&[u8]], b: &[&[u8]], c: &[&[u8]]| -> Result<Vec<Subspace>> {
        Ok(vec![span(&f3, 2, a)?, span(&f3, 3, b)?, span(&f3, 4, c)?])
    };
    let cl_x = expect(
        &[&[1, 0]],
        &[&[2, 1, 0], &[0, 0, 1]],
        &[&[1, 1, 0, 1], &[0, 1, 2, 1]],
    )?;
    let cl_y = expect(
        &[&[0, 1]],
        &[&[1, 0, 2], &[0, 1, 1]],
        &[&[1, 0, 0, 1], &[0, 1, 2, 1]],
    )?;
    let cl_z = expect(
        &[&[1, 0], &[0, 1]],
        &[&[1, 0, 0], &[0, 0, 1]],
        &[&[1, 0, 2, 1], &[0, 1, 0, 0]],
    )?;
    let full: Vec<Subspace> = [2, 3, 4].iter().map(|&n| Subspace::full(&f3, n)).collect();
    let (rk, _) = tencode_core::tensor::tensor_rank(x, &b)?;
    let terms = Tensor::simple(&f3, &[vec![1, 0], vec![2, 1, 0], vec![1, 1, 0, 1]])?.add(
        &Tensor::simple(&f3, &[vec![1, 0], vec![0, 0, 1], vec![1, 0, 1, 0]])?,
    )?;
    Ok(vec![
        check("k", 3, code.k()),
        check("cl(X)", spaces(&cl_x), spaces(&x.closure())),
        check("cl(Y)", spaces(&cl_y), spaces(&y.closure())),
        check("cl(Z)", spaces(&cl_z), spaces(&z.closure())),
        check("cl(C)", spaces(&full), spaces(&code.closure())),
        check("rk(X)", 2, rk),
        check(
            "X as a sum of two simple tensors",
            json!(x.entries()),
            json!(terms.entries()),
        ),
        check(
            "mode-1 fibers of X",
            sorted(vec![vec![2, 0], vec![1, 0], vec![0, 0]]),
            fiber_set(x, 0)?,
        ),
        check(
            "mode-2 fibers of X",
            sorted(vec![
                vec![2, 1, 1],
                vec![2, 1, 0],
                vec![0, 0, 1],
                vec![0, 0, 0],
            ]),
            fiber_set(x, 1)?,
        ),
        check(
            "mode-3 fibers of X",
            sorted(vec![
                vec![2, 2, 0, 2],
                vec![1, 1, 0, 1],
                vec![1, 0, 1, 0],
                vec![0, 0, 0, 0],
            ]),
            fiber_set(x, 2)?,
        ),
        check(
            "first slice of X",
            json!([[2, 1, 1], [0, 0, 0]]),
            json!(x.slice3(0)?),
        ),
        check(
            "flattening ranks of X",
            json!([1, 2, 2]),
            json!([
                x.flattening_rank(0)?,
                x.flattening_rank(1)?,
                x.flattening_rank(2)?
            ]),
        ),
        check(
            "t^cl",
            json!([4, 18, 24]),
            json!(weights(&code, Family::ClosureType, &b)?),
        ),
    ])
}

fn gabidulin_example(ctx: &Ctx) -> Result<Vec<Check>> {
    let c = ctx.code("gabidulin_c.json")?;
    let d = ctx.code("gabidulin_d.json")?;
    let b = ctx.budget();
    let dual_profile = |x: &TensorCode| -> Result<Vec<usize>> {
        (1..=x.k())
            .map(|j| generalized_dual_weight(x, Family::ClosureType, j, &b))
            .collect()
    };
    let f3 = c.field().clone();
    let e12 = span(&f3, 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])?;
    let a = Anticode::closure_type(c.shape(), vec![Subspace::full(&f3, 2), e12])?;
    Ok(vec![
        check("k(C), k(D)", json!([4, 4]), json!([c.k(), d.k()])),
        check(
            "d(C), d(D)",
            json!([2, 2]),
            json!([c.min_distance(&b)?, d.min_distance(&b)?]),
        ),
        check(
            "t_1^ps(C), t_1^ps(D)",
            json!([2, 2]),
            json!([
                generalized_weight(&c, Family::Perfect, 1, &b)?,
                generalized_weight(&d, Family::Perfect, 1, &b)?
            ]),
        ),
        check(
            "t^cl(C)",
            json!([4, 6, 8, 8]),
            json!(weights(&c, Family::ClosureType, &b)?),
        ),
        check("s^cl(C)", json!([4, 6, 7, 8]), json!(dual_profile(&c)?)),
        check(
            "t^cl(D)",
            json!([4, 4, 8, 8]),
            json!(weights(&d, Family::ClosureType, &b)?),
        ),
        check("s^cl(D)", json!([4, 4, 7, 8]), json!(dual_profile(&d)?)),
        check(
            "t^D(C)",
            json!([8, 8, 8, 8]),
            json!(weights(&c, Family::Delsarte, &b)?),
        ),
        check(
            "t^D(D)",
            json!([8, 8, 8, 8]),
            json!(weights(&d, Family::Delsarte, &b)?),
        ),
        check("dim C ∩ (F^2 ⊗ <e1,e2>)", 1, intersection_dim(&c, &a)?),
        check("C is 1-BMD", true, is_jbmd_r2(&c, 1, &b)?),
    ])
}

fn tbmd_example(ctx: &Ctx) -> Result<Vec<Check>> {
    let c = ctx.code("gabidulin_c.json")?;
    let d = ctx.code("gabidulin_d.json")?;
    let b = ctx.budget();
    let rc = tbmd_classify(&c, Family::ClosureType, &b)?;
    let rd = tbmd_classify(&d, Family::ClosureType, &b)?;
    let dc = tbmd_classify(&c, Family::Delsarte, &b)?;
    let dd = tbmd_classify(&d, Family::Delsarte, &b)?;
    Ok(vec![
        check(
            "s_1^cl(C^⊥), s_1^cl(D^⊥)",
            json!([4, 4]),
            json!([rc.dual_s1, rd.dual_s1]),
        ),
        check("C: 8 - 4 - t_1^cl", 0, json!(rc.margins[0])),
        check("C minimally TBMD at", 2, json!(rc.minimal)),
        check("D minimally TBMD at", 3, json!(rd.minimal)),
        check(
            "C, D 1-TBMD for Delsarte",
            json!([true, true]),
            json!([dc.tbmd[0], dd.tbmd[0]]),
        ),
    ])
}

fn dual_perfect_example(ctx: &Ctx) -> Result<Vec<Check>> {
    let a = ctx.code("dual_perfect.json")?;
    let b = ctx.budget();
    let perp = a.dual();
    let expected = span(a.field(), 6, &[&[0, 1, 0, 1, 0, 0]])?;
    Ok(vec![
        check("dim A", 5, a.k()),
        check(
            "A is perfect",
            true,
            is_member(a.shape(), a.space(), Family::Perfect, &b)?.is_some(),
        ),
        check("A^⊥", subspace_json(&expected), subspace_json(perp.space())),
        check(
            "A^⊥ is perfect",
            false,
            is_member(a.shape(), perp.space(), Family::Perfect, &b)?.is_some(),
        ),
    ])
}

fn incomparable_example(ctx: &Ctx) -> Result<Vec<Check>> {
    let m = ctx.code("matrix_m.json")?;
    let n = ctx.code("matrix_n.json")?;
    let b = ctx.budget();
    let pair = |x: &TensorCode| -> Result<Value> {
        Ok(json!([
            generalized_weight(x, Family::ClosureType, 1, &b)?,
            generalized_dual_weight(x, Family::ClosureType, 1, &b)?
        ]))
    };
    Ok(vec![
        check("t_1^cl, s_1^cl of <M>", json!([1, 3]), pair(&m)?),
        check("t_1^cl, s_1^cl of <N>", json!([9, 7]), pair(&n)?),
    ])
}

fn symmetric_example(ctx: &Ctx) -> Result<Vec<Check>> {
    let c = ctx.code("symmetric.json")?;
    let b = ctx.budget();
    Ok(vec![
        check("d", 2, c.min_distance(&b)?),
        check(
            "s_1^cl",
            5,
            generalized_dual_weight(&c, Family::ClosureType, 1, &b)?,
        ),
    ])
}

fn lattice_examples(ctx: &Ctx) -> Result<Vec<Check>> {
    let f2 = Field::prime(2)?;
    let s = Shape::new(&f2, &[3, 3])?;
    let b = ctx.budget();
    let a = Anticode::dual_closure_type(
        &s,
        vec![
            span(&f2, 3, &[&[0, 1, 0], &[0, 0, 1]])?,
            span(&f2, 3, &[&[1, 0, 0], &[0, 1, 1]])?,
        ],
    )?;
    let bb = Anticode::dual_closure_type(
        &s,
        vec![span(&f2, 3, &[&[1, 0, 0]])?, Subspace::zero(&f2, 3)],
    )?;
    let ps = |x: &Anticode| -> Result<Anticode> {
        is_member(&s, &x.to_subspace(), Family::Perfect, &b)?
            .ok_or_else(|| Error::Inconsistent("dual closure-type anticode is not perfect".into()))
    };
    let ps_meet = ps(&a)?.meet(&ps(&bb)?, &b)?.to_subspace();
    let e1 = vec![1, 0, 0];
    let expected = Subspace::span(
        &f2,
        9,
        &[
            Tensor::simple(&f2, &[e1.clone(), e1.clone()])?.into_entries(),
            Tensor::simple(&f2, &[e1.clone(), vec![0, 1, 1]])?.into_entries(),
        ],
    )?;
    let da = Anticode::single_mode(&s, Family::Delsarte, 0, span(&f2, 3, &[&[1, 0, 0]])?)?;
    let db = Anticode::single_mode(&s, Family::Delsarte, 1, span(&f2, 3, &[&[1, 0, 0]])?)?;
    Ok(vec![
        check("dual closure-type meet", 0, a.meet(&bb, &b)?.dim()),
        check(
            "perfect-space meet",
            subspace_json(&expected),
            subspace_json(&ps_meet),
        ),
        check("Delsarte meet across modes", 0, da.meet(&db, &b)?.dim()),
        check(
            "intersection of the same pair",
            1,
            da.to_subspace().intersect(&db.to_subspace())?.dim(),
        ),
        check("Möbius μ(0,0)", "1", subspace_mobius(2, 0, 0)?.to_string()),
    ])
}

fn powers(field: &Field, exps: &[&[u64]]) -> Value {
    let g = field.generator();
    Value::Array(
        exps.iter()
            .map(|r| {
                vector_json(
                    field,
                    &r.iter().map(|&e| g.pow(e).value()).collect::<Vec<_>>(),
                )
            })
            .collect(),
    )
}

fn ext_rows(field: &Field, m: &[Vec<u8>]) -> Value {
    Value::Array(m.iter().map(|r| vector_json(field, r)).collect())
}

fn values(v: &[tencode_core::FieldElement]) -> Vec<u8> {
    v.iter().map(|x| x.value()).collect()
}

struct RothCase<'a> {
    field: Field,
    mu: usize,
    fixture: &'a str,
    s: &'a [(usize, usize)],
    s_bar: &'a [(usize, usize)],
    dual_exps: &'a [u64],
    h: &'a [&'a [u64]],
    g: &'a [&'a [u64]],
}

fn roth_common(ctx: &Ctx, case: &RothCase) -> Result<(TensorCode, Vec<Check>)> {
    let f = &case.field;
    let params = RothParams::powers(f, case.mu)?;
    let mats = build_matrices(&params)?;
    let code = roth_code(&params)?;
    let displayed = ctx.code(case.fixture)?;
    let dual = powers(f, &[case.dual_exps]);
    let found_dual = json!([
        vector_json(f, &values(&mats.alpha_dual)),
        vector_json(f, &values(&mats.beta_dual))
    ]);
    let checks = vec![
        check("S", json!(case.s), json!(mats.s)),
        check("S-bar", json!(case.s_bar), json!(mats.s_bar)),
        check("dual bases", json!([dual[0], dual[0]]), found_dual),
        check("H", powers(f, case.h), ext_rows(f, &mats.h)),
        check("G", powers(f, case.g), ext_rows(f, &mats.g)),
        check("k", case.s_bar.len() * f.m() as usize, code.k()),
        check(
            "code equals the span of the displayed generators",
            true,
            code == displayed,
        ),
    ];
    Ok((code, checks))
}

fn roth_gf4(ctx: &Ctx) -> Result<Vec<Check>> {
    let case = RothCase {
        field: Field::gf4(),
        mu: 2,
        fixture: "roth_gf4.json",
        s: &[(0, 0), (0, 1), (1, 0)],
        s_bar: &[(1, 1)],
        dual_exps: &[2, 0],
        h: &[&[0, 1, 1, 2], &[0, 2, 1, 0], &[0, 1, 2, 0]],
        g: &[&[2, 1, 1, 0]],
    };
    let (code, mut checks) = roth_common(ctx, &case)?;
    let b = ctx.budget();
    let perp = code.dual();
    let t1 = |fam| generalized_weight(&code, fam, 1, &b);
    let s1p = |fam| generalized_dual_weight(&perp, fam, 1, &b);
    let c1 = &ctx.generators("roth_gf4.json")?[0];
    let d = code.min_distance(&b)?;
    checks.extend([
        check("rk(C_1)", 3, tencode_core::tensor::tensor_rank(c1, &b)?.0),
        check("t_1^ps", 3, t1(Family::Perfect)?),
        check(
            "t_1^cl, t_1^D, t_1^R",
            json!([8, 8, 8]),
            json!([
                t1(Family::ClosureType)?,
                t1(Family::Delsarte)?,
                t1(Family::Ravagnani)?
            ]),
        ),
        check(
            "t_2^cl",
            8,
            generalized_weight(&code, Family::ClosureType, 2, &b)?,
        ),
        check(
            "(s_1^cl)^⊥, (s_1^D)^⊥, (s_1^R)^⊥",
            json!([4, 4, 4]),
            json!([
                s1p(Family::ClosureType)?,
                s1p(Family::Delsarte)?,
                s1p(Family::Ravagnani)?
            ]),
        ),
        check(
            "1-TBMD for closure-type",
            true,
            tbmd_classify(&code, Family::ClosureType, &b)?.tbmd[0],
        ),
        check("d >= 3", true, d >= 3),
        record("d", d),
    ]);
    Ok(checks)
}

fn roth_gf8(ctx: &Ctx) -> Result<Vec<Check>> {
    let case = RothCase {
        field: Field::gf8(),
        mu: 3,
        fixture: "roth_gf8.json",
        s: &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)],
        s_bar: &[(1, 2), (2, 1), (2, 2)],
        dual_exps: &[0, 2, 1],
        h: &[
            &[0, 1, 2, 1, 2, 3, 2, 3, 4],
            &[0, 2, 4, 1, 3, 5, 2, 4, 6],
            &[0, 4, 1, 1, 5, 2, 2, 6, 3],
            &[0, 1, 2, 2, 3, 4, 4, 5, 6],
            &[0, 2, 4, 2, 4, 6, 4, 6, 1],
            &[0, 1, 2, 4, 5, 6, 1, 2, 3],
        ],
        g: &[
            &[0, 1, 4, 4, 5, 1, 2, 3, 6],
            &[0, 4, 2, 1, 5, 3, 4, 1, 6],
            &[0, 1, 4, 1, 2, 5, 4, 5, 1],
        ],
    };
    let (code, mut checks) = roth_common(ctx, &case)?;
    let b = ctx.budget();
    let perp = code.dual();
    let t1 = |fam| generalized_weight(&code, fam, 1, &b);
    let s1p = |fam| generalized_dual_weight(&perp, fam, 1, &b);
    let r = tbmd_classify(&code, Family::Ravagnani, &b)?;
    let d = code.min_distance(&b)?;
    checks.extend([
        check(
            "t_1^cl, t_1^D, t_1^R",
            json!([18, 18, 18]),
            json!([
                t1(Family::ClosureType)?,
                t1(Family::Delsarte)?,
                t1(Family::Ravagnani)?
            ]),
        ),
        check(
            "(s_1^cl)^⊥, (s_1^D)^⊥, (s_1^R)^⊥",
            json!([9, 9, 9]),
            json!([
                s1p(Family::ClosureType)?,
                s1p(Family::Delsarte)?,
                s1p(Family::Ravagnani)?
            ]),
        ),
        check("27 - 9 - t_1^R", 0, json!(r.margins[0])),
        check("1-TBMD for Ravagnani", false, r.tbmd[0]),
        check("4 <= d <= 5", true, (4..=5).contains(&d)),
        record("d", d),
    ]);
    Ok(checks)
}

type Runner = fn(&Ctx) -> Result<Vec<Check>>;

const EXAMPLES: &[(&str, Runner)] = &[
    ("closure", closure_example),
    ("gabidulin", gabidulin_example),
    ("tbmd", tbmd_example),
    ("dual-of-perfect-space", dual_perfect_example),
    ("incomparable-weights", incomparable_example),
    ("symmetric-code", symmetric_example),
    ("lattice-counterexamples", lattice_examples),
    ("roth-gf4", roth_gf4),
    ("roth-gf8", roth_gf8),
];

pub fn names() -> Vec<&'static str> {
    EXAMPLES.iter().map(|(n, _)| *n).collect()
}

/// Runs the selected examples (all when `only` is empty); returns the report
/// entries and whether every check passed.
pub fn run(dir: Option<&Path>, limits: &Limits, only: &[String]) -> Result<(Vec<Value>, bool)> {
    if let Some(bad) = only.iter().find(|o| !EXAMPLES.iter().any(|(n, _)| n == o)) {
        return Err(Error::Invalid(format!(
            "unknown example {bad:?}; known: {}",
            names().join(", ")
        )));
    }
    let ctx = Ctx { dir, limits };
    let mut all = true;
    let mut out = Vec::new();
    for (name, runner) in EXAMPLES {
        if !only.is_empty() && !only.iter().any(|o| o == name) {
            continue;
        }
        let entry = match runner(&ctx) {
            Ok(checks) => {
                let passed = checks.iter().all(Check::passed);
                let failures: Vec<Value> = checks
                    .iter()
                    .filter(|c| !c.passed())
                    .map(|c| json!({"what": c.what, "expected": c.expected, "found": c.found}))
                    .collect();
                let recorded: Vec<Value> = checks
                    .iter()
                    .filter(|c| c.expected.is_none())
                    .map(|c| json!({"what": c.what, "value": c.found}))
                    .collect();
                all &= passed;
                let mut e = json!({"name": name, "passed": passed, "checks": checks.len(), "failures": failures});
                if !recorded.is_empty() {
                    e["recorded"] = Value::Array(recorded);
                }
                e
            }
            Err(e) => {
                all = false;
                json!({"name": name, "passed": false, "error": {"code": e.code(), "message": e.to_string()}})
            }
        };
        out.push(entry);
    }
    Ok((out, all))
}
