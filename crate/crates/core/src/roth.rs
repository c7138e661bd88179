//! Roth's construction of codes of 3-tensors over GF(p) from parity-check and
//! generator matrices over GF(p^m), for square index ranges.

use crate::budget::Budget;
use crate::code::TensorCode;
use crate::error::{Error, Result};
use crate::gfq::{dual_basis, expand_over_base, Field, FieldElement};
use crate::linalg::ProjectivePoints;
use crate::qcomb::prime_power;
use crate::subspace::{enumerate_subspaces, Subspace};
use crate::tensor::Shape;

/// Block lengths accepted by [`block_code_exists`].
pub const MAX_BLOCK_LENGTH: usize = 6;

/// Bases `α`, `β` of length `μ` and `ω` of length `m` in GF(p^m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RothParams {
    field: Field,
    alpha: Vec<FieldElement>,
    beta: Vec<FieldElement>,
    omega: Vec<FieldElement>,
}

fn independent(field: &Field, v: &[FieldElement]) -> bool {
    let base = field.prime_subfield();
    let rows: Vec<Vec<u8>> = v
        .iter()
        .map(|x| x.coeffs().iter().map(|&c| c as u8).collect())
        .collect();
    crate::linalg::rank(base, &rows) == v.len()
}

impl RothParams {
    pub fn new(
        alpha: Vec<FieldElement>,
        beta: Vec<FieldElement>,
        omega: Vec<FieldElement>,
    ) -> Result<RothParams> {
        let field = omega
            .first()
            .map(|x| x.field().clone())
            .ok_or(Error::DependentBasis)?;
        if alpha
            .iter()
            .chain(&beta)
            .chain(&omega)
            .any(|x| x.field() != &field)
        {
            return Err(Error::MixedFields);
        }
        if alpha.is_empty() || alpha.len() != beta.len() {
            return Err(Error::Invalid(format!(
                "alpha and beta need one common length, got {} and {}",
                alpha.len(),
                beta.len()
            )));
        }
        if alpha.len() > MAX_BLOCK_LENGTH {
            return Err(Error::Invalid(format!(
                "index range {} exceeds {MAX_BLOCK_LENGTH}",
                alpha.len()
            )));
        }
        if omega.len() != field.m() as usize {
            return Err(Error::Invalid(format!(
                "omega needs {} elements",
                field.m()
            )));
        }
        if !independent(&field, &alpha)
            || !independent(&field, &beta)
            || !independent(&field, &omega)
        {
            return Err(Error::DependentBasis);
        }
        Ok(RothParams {
            field,
            alpha,
            beta,
            omega,
        })
    }

    /// `α = β = (1, x, …, x^(μ-1))` and `ω = (1, x, …, x^(m-1))`, where `x` is
    /// the class of the variable modulo the defining polynomial.
    pub fn powers(field: &Field, mu: usize) -> Result<RothParams> {
        let x = field.generator();
        let pw = |len: usize| (0..len).map(|i| x.pow(i as u64)).collect::<Vec<_>>();
        RothParams::new(pw(mu), pw(mu), pw(field.m() as usize))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn mu(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[FieldElement] {
        &self.alpha
    }

    pub fn beta(&self) -> &[FieldElement] {
        &self.beta
    }

    pub fn omega(&self) -> &[FieldElement] {
        &self.omega
    }

    /// Tensor dims `(μ, μ, m)`.
    pub fn shape(&self) -> Result<Shape> {
        let m = self.field.m() as usize;
        Shape::new(self.field.prime_subfield(), &[self.mu(), self.mu(), m])
    }
}

/// Whether some `[n, k]` code over GF(q) has minimum Hamming weight at least `d`.
pub fn block_code_exists(q: u64, n: usize, k: usize, d: usize) -> Result<bool> {
    let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if n == 0 || n > MAX_BLOCK_LENGTH || k == 0 || k > n {
        return Err(Error::Invalid(format!(
            "block code parameters [{n}, {k}] outside 1 <= k <= n <= {MAX_BLOCK_LENGTH}"
        )));
    }
    let field = Field::with_order(p as u32, m)?;
    let budget = Budget::default();
    for s in enumerate_subspaces(&field, n, k, &budget)? {
        if min_hamming_weight(&field, &s) >= d {
            return Ok(true);
        }
    }
    Ok(false)
}

fn min_hamming_weight(field: &Field, s: &Subspace) -> usize {
    ProjectivePoints::new(field, s.dim())
        .map(|c| {
            crate::linalg::combine(field, &c, s.basis(), s.ambient_dim())
                .iter()
                .filter(|&&x| x != 0)
                .count()
        })
        .min()
        .unwrap_or(usize::MAX)
}

/// `𝒮`: pairs `(ℓ, s)` in `[0, μ)²` with an `[μ, ℓ+1, ≥ s+1]` code over GF(p),
/// and `𝒮̄`: the remaining pairs. Both in lexicographic order.
pub fn s_sets(params: &RothParams) -> Result<(Vec<(usize, usize)>, Vec<(usize, usize)>)> {
    let (mu, p) = (params.mu(), params.field.p() as u64);
    let mut s = Vec::new();
    let mut s_bar = Vec::new();
    for l in 0..mu {
        for t in 0..mu {
            if block_code_exists(p, mu, l + 1, t + 1)? {
                s.push((l, t));
            } else {
                s_bar.push((l, t));
            }
        }
    }
    Ok((s, s_bar))
}

/// `ℋ` and `𝒢` with columns indexed by `(i, j)` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionMatrices {
    pub field: Field,
    pub s: Vec<(usize, usize)>,
    pub s_bar: Vec<(usize, usize)>,
    /// `h[r][(i, j)] = α_i^(p^ℓ) β_j^(p^s)` for the `r`-th pair of `𝒮`.
    pub h: Vec<Vec<u8>>,
    /// `g[r][(i, j)] = (α⊥_i)^(p^ℓ) (β⊥_j)^(p^s)` for the `r`-th pair of `𝒮̄`.
    pub g: Vec<Vec<u8>>,
    pub alpha_dual: Vec<FieldElement>,
    pub beta_dual: Vec<FieldElement>,
}

fn frobenius_rows(
    field: &Field,
    pairs: &[(usize, usize)],
    a: &[FieldElement],
    b: &[FieldElement],
) -> Vec<Vec<u8>> {
    let p = field.p() as u64;
    pairs
        .iter()
        .map(|&(l, s)| {
            a.iter()
                .flat_map(|x| {
                    b.iter().map(move |y| {
                        field.mul(
                            field.pow(x.value(), p.pow(l as u32)),
                            field.pow(y.value(), p.pow(s as u32)),
                        )
                    })
                })
                .collect()
        })
        .collect()
}

/// Dual basis of a length-`μ` family: the trace-dual of its completion by the
/// polynomial basis, truncated to the first `μ` entries.
fn dual_of(field: &Field, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let mut full = v.to_vec();
    let x = field.generator();
    for i in 0..field.m() as u64 {
        if full.len() == field.m() as usize {
            break;
        }
        let mut probe = full.clone();
        probe.push(x.pow(i));
        if independent(field, &probe) {
            full = probe;
        }
    }
    let mut d = dual_basis(&full)?;
    d.truncate(v.len());
    Ok(d)
}

pub fn build_matrices(params: &RothParams) -> Result<ConstructionMatrices> {
    let (s, s_bar) = s_sets(params)?;
    let f = &params.field;
    let alpha_dual = dual_of(f, &params.alpha)?;
    let beta_dual = dual_of(f, &params.beta)?;
    Ok(ConstructionMatrices {
        field: f.clone(),
        h: frobenius_rows(f, &s, &params.alpha, &params.beta),
        g: frobenius_rows(f, &s_bar, &alpha_dual, &beta_dual),
        s,
        s_bar,
        alpha_dual,
        beta_dual,
    })
}

/// The span of the ω-expansions of `ξ·g` for every row `g` of `𝒢` and `ξ` in
/// the polynomial basis of GF(p^m).
pub fn roth_code_from_generators(
    params: &RothParams,
    mats: &ConstructionMatrices,
) -> Result<TensorCode> {
    let shape = params.shape()?;
    let f = &params.field;
    let m = f.m() as usize;
    let x = f.generator();
    let mut rows = Vec::new();
    for g in &mats.g {
        for e in 0..m {
            let xi = x.pow(e as u64).value();
            let mut flat = Vec::with_capacity(shape.n());
            for &c in g {
                flat.extend(expand_over_base(&f.elem(f.mul(xi, c)), &params.omega)?);
            }
            rows.push(flat);
        }
    }
    TensorCode::from_rows(&shape, &rows)
}

/// All `X` with `Σ_{i,j,t} X_{ijt} α_i^(p^ℓ) β_j^(p^s) ω_t = 0` for `(ℓ, s) ∈ 𝒮`.
pub fn roth_code_from_checks(
    params: &RothParams,
    mats: &ConstructionMatrices,
) -> Result<TensorCode> {
    let shape = params.shape()?;
    let f = &params.field;
    let m = f.m() as usize;
    let mut constraints = Vec::new();
    for h in &mats.h {
        for r in 0..m {
            let row: Vec<u8> = h
                .iter()
                .flat_map(|&c| {
                    params
                        .omega
                        .iter()
                        .map(move |w| f.coeffs(f.mul(c, w.value()))[r] as u8)
                })
                .collect();
            constraints.push(row);
        }
    }
    let checks = Subspace::span(shape.field(), shape.n(), &constraints)?;
    TensorCode::from_subspace(&shape, checks.orthogonal_complement())
}

/// The code, built by both routes, which must agree.
pub fn roth_code(params: &RothParams) -> Result<TensorCode> {
    let mats = build_matrices(params)?;
    let by_generators = roth_code_from_generators(params, &mats)?;
    let by_checks = roth_code_from_checks(params, &mats)?;
    if by_generators != by_checks {
        return Err(Error::Inconsistent(format!(
            "generator route gives dimension {}, parity-check route {}",
            by_generators.k(),
            by_checks.k()
        )));
    }
    Ok(by_generators)
}

/// `ℋ c` over GF(p^m) for the folded codeword `c_(i,j) = Σ_t X_{ijt} ω_t`.
pub fn syndrome(params: &RothParams, mats: &ConstructionMatrices, x: &[u8]) -> Vec<u8> {
    let f = &params.field;
    let m = params.omega.len();
    let folded: Vec<u8> = x
        .chunks(m)
        .map(|coeffs| {
            coeffs
                .iter()
                .zip(&params.omega)
                .fold(0, |acc, (&c, w)| f.add(acc, f.mul(c, w.value())))
        })
        .collect();
    mats.h
        .iter()
        .map(|h| {
            h.iter()
                .zip(&folded)
                .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_codes() {
        assert!(block_code_exists(2, 2, 1, 2).unwrap());
        assert!(!block_code_exists(2, 2, 2, 2).unwrap());
        assert!(block_code_exists(3, 4, 2, 3).unwrap());
        assert!(!block_code_exists(2, 4, 2, 4).unwrap());
        assert!(block_code_exists(2, 7, 1, 1).is_err());
        assert!(block_code_exists(6, 2, 1, 1).is_err());
    }

    #[test]
    fn sets_partition_the_square() {
        let p = RothParams::powers(&Field::with_order(3, 2).unwrap(), 2).unwrap();
        let (s, sb) = s_sets(&p).unwrap();
        assert_eq!(s.len() + sb.len(), 4);
    }

    #[test]
    fn codewords_have_zero_syndrome() {
        let params = RothParams::powers(&Field::gf8(), 3).unwrap();
        let mats = build_matrices(&params).unwrap();
        let c = roth_code(&params).unwrap();
        assert_eq!(c.k(), mats.s_bar.len() * 3);
        for v in c.space().basis() {
            assert!(syndrome(&params, &mats, v).iter().all(|&s| s == 0));
        }
    }

    #[test]
    fn rejects_bad_params() {
        let f = Field::gf4();
        let one = f.one();
        assert!(RothParams::new(
            vec![one.clone(), one.clone()],
            vec![one.clone()],
            vec![one.clone(), f.generator()]
        )
        .is_err());
        assert_eq!(
            RothParams::new(
                vec![one.clone(), one.clone()],
                vec![one.clone(), f.generator()],
                vec![one.clone(), f.generator()]
            ),
            Err(Error::DependentBasis)
        );
    }

    #[test]
    fn other_base_field() {
        // GF(9) over GF(3): both routes agree
        let params = RothParams::powers(&Field::with_order(3, 2).unwrap(), 2).unwrap();
        let c = roth_code(&params).unwrap();
        let mats = build_matrices(&params).unwrap();
        assert_eq!(c.k(), 2 * (4 - mats.s.len()));
    }
}
