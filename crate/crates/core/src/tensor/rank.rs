//! Exact tensor rank by exhaustive search.
//!
//! `X` has rank at most `R` iff, for a fixed mode `i`, the span `V` of the
//! mode-`i` slices lies in some `R`-dimensional space spanned by simple
//! `(r-1)`-tensors. For each `R` from the flattening lower bound upward we
//! search such superspaces `W ⊇ V` in the mode where it is cheapest, either
//! by enumerating complements of `V` or by adjoining subsets of simple tensors.

use super::{flatten_mode, kron, strides, Tensor};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gfq::Field;
use crate::linalg::{self, ProjectivePoints};
use crate::qcomb::gaussian;
use crate::subspace::{Subspace, SubspaceIter};
use num_traits::ToPrimitive;

/// A witness `X = Σ_s u_s^(1) ⊗ … ⊗ u_s^(r)`. Not canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleDecomposition {
    field: Field,
    dims: Vec<usize>,
    terms: Vec<Vec<Vec<u8>>>,
}

impl SimpleDecomposition {
    pub fn terms(&self) -> &[Vec<Vec<u8>>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn reconstruct(&self) -> Tensor {
        let n: usize = self.dims.iter().product();
        let mut e = vec![0u8; n];
        for t in &self.terms {
            for (x, y) in e.iter_mut().zip(kron(&self.field, t)) {
                *x = self.field.add(*x, y);
            }
        }
        Tensor::from_parts(&self.field, &self.dims, e)
    }
}

/// Factors `u_1, …, u_r` with `v = u_1 ⊗ … ⊗ u_r`, or `None` when `v` is zero
/// or not simple. `v` is a flat tensor with the given dims.
pub fn rank_one_factors(field: &Field, dims: &[usize], v: &[u8]) -> Option<Vec<Vec<u8>>> {
    let j = v.iter().position(|&x| x != 0)?;
    if dims.len() == 1 {
        return Some(vec![v.to_vec()]);
    }
    let st = strides(dims);
    let lead_inv = field.inv(v[j]);
    let factors: Vec<Vec<u8>> = dims
        .iter()
        .enumerate()
        .map(|(t, &nt)| {
            let jt = (j / st[t]) % nt;
            let base = j - jt * st[t];
            (0..nt)
                .map(|a| {
                    let x = v[base + a * st[t]];
                    if t == 0 {
                        x
                    } else {
                        field.mul(x, lead_inv)
                    }
                })
                .collect()
        })
        .collect();
    (kron(field, &factors) == v).then_some(factors)
}

pub fn tensor_rank(x: &Tensor, budget: &Budget) -> Result<(usize, SimpleDecomposition)> {
    Ok(tensor_rank_at_most(x, usize::MAX, budget)?.expect("uncapped search always decides"))
}

/// The rank with a witness if it is at most `cap`, `None` if it exceeds `cap`.
pub fn tensor_rank_at_most(
    x: &Tensor,
    cap: usize,
    budget: &Budget,
) -> Result<Option<(usize, SimpleDecomposition)>> {
    let field = x.field();
    let empty = SimpleDecomposition {
        field: field.clone(),
        dims: x.dims().to_vec(),
        terms: Vec::new(),
    };
    if x.is_zero() {
        return Ok(Some((0, empty)));
    }
    let problems: Vec<Problem> = (0..x.order()).map(|i| Problem::new(x, i)).collect();
    let lower = problems.iter().map(|p| p.v.dim()).max().unwrap();
    if lower > cap {
        return Ok(None);
    }
    let trivial = fiber_decomposition(x);
    let upper = trivial.len();
    let mut nodes = 0u64;
    for r in lower..upper.min(cap.saturating_add(1)) {
        // rank <= r does not depend on the mode, so the cheapest mode decides it
        let p = problems.iter().min_by_key(|p| p.cost(r)).unwrap();
        let mut search = Search {
            p,
            r,
            nodes: &mut nodes,
            limit: budget.rank_nodes(),
            upper,
        };
        if let Some(basis) = search.run()? {
            let d = p.assemble(&basis, &empty);
            debug_assert_eq!(d.reconstruct(), *x);
            return Ok(Some((r, d)));
        }
    }
    Ok((upper <= cap).then_some((upper, trivial)))
}

/// One term per nonzero fiber of the mode with the fewest nonzero fibers.
fn fiber_decomposition(x: &Tensor) -> SimpleDecomposition {
    let dims = x.dims();
    let (mode, fibers) = (0..x.order())
        .map(|i| (i, x.fibers(i).expect("mode in range")))
        .min_by_key(|(_, f)| f.iter().filter(|v| v.iter().any(|&a| a != 0)).count())
        .unwrap();
    let others: Vec<usize> = (0..dims.len()).filter(|&t| t != mode).collect();
    let other_dims: Vec<usize> = others.iter().map(|&t| dims[t]).collect();
    let ost = strides(&other_dims);
    let mut terms = Vec::new();
    for (c, f) in fibers.into_iter().enumerate() {
        if f.iter().all(|&a| a == 0) {
            continue;
        }
        let mut factors = Vec::with_capacity(dims.len());
        for (k, &nt) in other_dims.iter().enumerate() {
            let mut e = vec![0u8; nt];
            e[(c / ost[k]) % nt] = 1;
            factors.push(e);
        }
        factors.insert(mode, f);
        terms.push(factors);
    }
    SimpleDecomposition {
        field: x.field().clone(),
        dims: dims.to_vec(),
        terms,
    }
}

struct RankOne {
    flat: Vec<u8>,
    factors: Vec<Vec<u8>>,
}

/// Incrementally built echelon basis; rows are kept in insertion order.
struct Echelon {
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn from_subspace(v: &Subspace) -> Self {
        Echelon {
            rows: v.basis().to_vec(),
            pivots: v.pivots().to_vec(),
        }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the current rows.
    fn try_add(&mut self, field: &Field, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        linalg::reduce(field, &self.rows, &self.pivots, &mut w);
        let Some(p) = w.iter().position(|&a| a != 0) else {
            return false;
        };
        linalg::normalize(field, &mut w);
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    fn truncate(&mut self, len: usize) {
        self.rows.truncate(len);
        self.pivots.truncate(len);
    }
}

fn sat_u128(x: &num_bigint::BigInt) -> u128 {
    x.to_u128().unwrap_or(u128::MAX)
}

fn choose_sat(n: u128, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        if i >= n {
            return 0;
        }
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// The slice problem for one mode.
struct Problem<'a> {
    field: &'a Field,
    mode: usize,
    sub_dims: Vec<usize>,
    amb: usize,
    slices: Vec<Vec<u8>>,
    v: Subspace,
    simple_count: u128,
    simples: std::cell::OnceCell<Vec<RankOne>>,
}

impl<'a> Problem<'a> {
    fn new(x: &'a Tensor, mode: usize) -> Self {
        let dims = x.dims().to_vec();
        let sub_dims: Vec<usize> = (0..dims.len())
            .filter(|&t| t != mode)
            .map(|t| dims[t])
            .collect();
        let amb = sub_dims.iter().product();
        let slices = flatten_mode(&dims, x.entries(), mode);
        let v = Subspace::span_unchecked(x.field(), amb, slices.clone());
        let q = x.field().q();
        let simple_count = sub_dims.iter().fold(1u128, |acc, &n| {
            acc.saturating_mul(ProjectivePoints::count(q, n) as u128)
        });
        Problem {
            field: x.field(),
            mode,
            sub_dims,
            amb,
            slices,
            v,
            simple_count,
            simples: std::cell::OnceCell::new(),
        }
    }

    fn simples(&self) -> &[RankOne] {
        self.simples.get_or_init(|| {
            let mut out = vec![RankOne {
                flat: vec![1],
                factors: Vec::new(),
            }];
            for &n in &self.sub_dims {
                let pts: Vec<Vec<u8>> = ProjectivePoints::new(self.field, n).collect();
                let mut next = Vec::with_capacity(out.len() * pts.len());
                for ro in &out {
                    for p in &pts {
                        let mut factors = ro.factors.clone();
                        factors.push(p.clone());
                        let flat = ro.flat.iter().flat_map(|&a| p.iter().map(move |&b| (a, b)));
                        let flat = flat.map(|(a, b)| self.field.mul(a, b)).collect();
                        next.push(RankOne { flat, factors });
                    }
                }
                out = next;
            }
            out
        })
    }

    fn extension_counts(&self, r: usize) -> (u128, u128) {
        let e = r - self.v.dim();
        let quot = sat_u128(&gaussian(self.field.q() as u64, self.amb - self.v.dim(), e));
        (quot, choose_sat(self.simple_count, e))
    }

    fn check_cost(&self, r: usize) -> u128 {
        let proj = (ProjectivePoints::count(self.field.q(), r.min(60)) as u128).max(1);
        proj.min(self.simple_count)
    }

    fn cost(&self, r: usize) -> u128 {
        let (quot, subs) = self.extension_counts(r);
        quot.min(subs).saturating_mul(self.check_cost(r))
    }

    /// A basis of simple tensors for `W` (rows in echelon form, dim `r`), if `W` is perfect.
    fn perfect_basis(&self, w: &[Vec<u8>], r: usize) -> Option<Vec<RankOne>> {
        if self.sub_dims.len() == 1 {
            return Some(
                w.iter()
                    .map(|row| RankOne {
                        flat: row.clone(),
                        factors: vec![row.clone()],
                    })
                    .collect(),
            );
        }
        let mut ech = Echelon::new();
        let mut out = Vec::new();
        let proj = ProjectivePoints::count(self.field.q(), r.min(60)) as u128;
        if proj <= self.simple_count {
            for c in ProjectivePoints::new(self.field, r) {
                let v = linalg::combine(self.field, &c, w, self.amb);
                if let Some(factors) = rank_one_factors(self.field, &self.sub_dims, &v) {
                    if ech.try_add(self.field, &v) {
                        out.push(RankOne { flat: v, factors });
                        if out.len() == r {
                            return Some(out);
                        }
                    }
                }
            }
        } else {
            let mut rows = w.to_vec();
            let pivots = linalg::rref_in_place(self.field, &mut rows);
            for s in self.simples() {
                if linalg::in_span(self.field, &rows, &pivots, &s.flat)
                    && ech.try_add(self.field, &s.flat)
                {
                    out.push(RankOne {
                        flat: s.flat.clone(),
                        factors: s.factors.clone(),
                    });
                    if out.len() == r {
                        return Some(out);
                    }
                }
            }
        }
        None
    }

    /// Decomposition of the tensor from a simple basis of a superspace of `V`.
    fn assemble(&self, basis: &[RankOne], empty: &SimpleDecomposition) -> SimpleDecomposition {
        let r = basis.len();
        // [P | I] reduced gives the echelon basis of W together with its expression in the P_s
        let mut aug: Vec<Vec<u8>> = basis
            .iter()
            .enumerate()
            .map(|(s, b)| {
                let mut row = b.flat.clone();
                row.extend((0..r).map(|t| u8::from(s == t)));
                row
            })
            .collect();
        let pivots = linalg::rref_in_place(self.field, &mut aug);
        let ech: Vec<Vec<u8>> = aug.iter().map(|row| row[..self.amb].to_vec()).collect();
        let transform: Vec<Vec<u8>> = aug.iter().map(|row| row[self.amb..].to_vec()).collect();
        let coeffs: Vec<Vec<u8>> = self
            .slices
            .iter()
            .map(|sl| {
                let c = linalg::coordinates(self.field, &ech, &pivots, sl)
                    .expect("slice lies in the superspace");
                linalg::combine(self.field, &c, &transform, r)
            })
            .collect();
        let mut terms = Vec::with_capacity(r);
        for (s, b) in basis.iter().enumerate() {
            let u: Vec<u8> = coeffs.iter().map(|c| c[s]).collect();
            if u.iter().all(|&a| a == 0) {
                continue;
            }
            let mut factors = b.factors.clone();
            factors.insert(self.mode, u);
            terms.push(factors);
        }
        SimpleDecomposition {
            field: empty.field.clone(),
            dims: empty.dims.clone(),
            terms,
        }
    }
}

struct Search<'p, 'a> {
    p: &'p Problem<'a>,
    r: usize,
    nodes: &'p mut u64,
    limit: u64,
    upper: usize,
}

impl Search<'_, '_> {
    fn tick(&mut self) -> Result<()> {
        *self.nodes += 1;
        if *self.nodes > self.limit {
            return Err(Error::Undecided {
                what: "tensor rank",
                lower: self.r,
                upper: self.upper,
            });
        }
        Ok(())
    }

    fn run(&mut self) -> Result<Option<Vec<RankOne>>> {
        let p = self.p;
        let m = p.v.dim();
        if self.r == m {
            self.tick()?;
            return Ok(p.perfect_basis(p.v.basis(), m));
        }
        let (quot, subs) = p.extension_counts(self.r);
        if quot <= subs {
            self.by_complements()
        } else {
            let mut ech = Echelon::from_subspace(&p.v);
            self.by_subsets(0, &mut ech)
        }
    }

    /// Every `W ⊇ V` of dim `r` is `V ⊕ U` for a unique `U` inside the
    /// coordinate complement spanned by the non-pivot unit vectors.
    fn by_complements(&mut self) -> Result<Option<Vec<RankOne>>> {
        let p = self.p;
        let m = p.v.dim();
        let mut free = Vec::with_capacity(p.amb - m);
        let mut piv = p.v.pivots().iter().peekable();
        for c in 0..p.amb {
            if piv.peek() == Some(&&c) {
                piv.next();
            } else {
                free.push(c);
            }
        }
        for u in SubspaceIter::new(p.field, p.amb - m, self.r - m) {
            self.tick()?;
            let mut rows = p.v.basis().to_vec();
            for b in u.basis() {
                let mut lifted = vec![0u8; p.amb];
                for (&c, &a) in free.iter().zip(b) {
                    lifted[c] = a;
                }
                rows.push(lifted);
            }
            if let Some(basis) = p.perfect_basis(&rows, self.r) {
                return Ok(Some(basis));
            }
        }
        Ok(None)
    }

    /// Adjoins simple tensors to `V` one at a time, skipping dependent ones.
    fn by_subsets(&mut self, start: usize, ech: &mut Echelon) -> Result<Option<Vec<RankOne>>> {
        let p = self.p;
        if ech.len() == self.r {
            self.tick()?;
            return Ok(p.perfect_basis(&ech.rows, self.r));
        }
        let simples = p.simples();
        let need = self.r - ech.len();
        for idx in start..simples.len() {
            if simples.len() - idx < need {
                break;
            }
            let len = ech.len();
            if ech.try_add(p.field, &simples[idx].flat) {
                if let Some(b) = self.by_subsets(idx + 1, ech)? {
                    return Ok(Some(b));
                }
                ech.truncate(len);
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn zero_and_simple() {
        let f = Field::prime(3).unwrap();
        let z = Tensor::new(&f, &[2, 2, 2], vec![0; 8]).unwrap();
        assert_eq!(tensor_rank(&z, &budget()).unwrap().0, 0);
        let s = Tensor::simple(&f, &[vec![1, 2], vec![0, 1, 1], vec![2, 2]]).unwrap();
        let (r, d) = tensor_rank(&s, &budget()).unwrap();
        assert_eq!(r, 1);
        assert_eq!(d.reconstruct(), s);
    }

    #[test]
    fn matrix_rank_for_order_two() {
        let f = Field::prime(2).unwrap();
        let id = Tensor::new(&f, &[3, 3], vec![1, 0, 0, 0, 1, 0, 0, 0, 1]).unwrap();
        let (r, d) = tensor_rank(&id, &budget()).unwrap();
        assert_eq!(r, 3);
        assert_eq!(d.reconstruct(), id);
    }

    #[test]
    fn w_state_has_rank_three() {
        // e1⊗e1⊗e2 + e1⊗e2⊗e1 + e2⊗e1⊗e1 has rank 3 over every field
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            let mut e = vec![0u8; 8];
            e[1] = 1;
            e[2] = 1;
            e[4] = 1;
            let w = Tensor::new(&f, &[2, 2, 2], e).unwrap();
            let (r, d) = tensor_rank(&w, &budget()).unwrap();
            assert_eq!(r, 3, "GF({p})");
            assert_eq!(d.len(), 3);
            assert_eq!(d.reconstruct(), w);
        }
    }

    #[test]
    fn cap_and_budget() {
        let f = Field::prime(2).unwrap();
        let mut e = vec![0u8; 8];
        e[1] = 1;
        e[2] = 1;
        e[4] = 1;
        let w = Tensor::new(&f, &[2, 2, 2], e).unwrap();
        assert!(tensor_rank_at_most(&w, 2, &budget()).unwrap().is_none());
        assert_eq!(tensor_rank_at_most(&w, 3, &budget()).unwrap().unwrap().0, 3);
        let err = tensor_rank(&w, &Budget::new(10, 0)).unwrap_err();
        assert!(matches!(
            err,
            Error::Undecided {
                lower: 2,
                upper: 3,
                ..
            }
        ));
    }

    #[test]
    fn rank_one_detection() {
        let f = Field::prime(3).unwrap();
        assert!(rank_one_factors(&f, &[2, 2], &[1, 2, 2, 1]).is_some());
        assert!(rank_one_factors(&f, &[2, 2], &[1, 0, 0, 1]).is_none());
        assert!(rank_one_factors(&f, &[2, 2], &[0, 0, 0, 0]).is_none());
        let fac = rank_one_factors(&f, &[2, 2], &[0, 0, 2, 1]).unwrap();
        assert_eq!(kron(&f, &fac), vec![0, 0, 2, 1]);
    }
}
