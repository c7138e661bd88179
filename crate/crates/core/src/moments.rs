//! Generalized binomial moments and weight distributions of a tensor code
//! with respect to an anticode family, the Möbius relation between them,
//! MacWilliams identities for the moments and the TBMD classification.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::anticode::{enumerate_anticodes, family_size, intersection_dim, Anticode, Family};
use crate::budget::Budget;
use crate::code::TensorCode;
use crate::error::{Error, Result};
use crate::invariants::{delsarte_rank_weights, generalized_dual_weight, weights};
use crate::qcomb::{gaussian, qbinom_unchecked, qpow, FinitePoset};
use crate::subspace::{enumerate_subspaces, Subspace};
use crate::tensor::Shape;

/// `B_a^(j)` of a code for one family, together with `B̄_a^(j)` over the dual family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    pub family: Family,
    pub q: u64,
    pub n: usize,
    pub k: usize,
    /// `values[a][j - 1] = B_a^(j)` for `j` in `1..=k`.
    pub values: Vec<Vec<BigInt>>,
    /// `dual_values[a][j - 1] = B̄_a^(j)`.
    pub dual_values: Vec<Vec<BigInt>>,
    /// `|A_a|`.
    pub sizes: Vec<BigInt>,
    /// `|Ā_a|`.
    pub dual_sizes: Vec<BigInt>,
}

impl MomentTable {
    pub fn get(&self, a: usize, j: usize) -> &BigInt {
        &self.values[a][j - 1]
    }
}

/// Rows `Σ_{A ∈ A_a} [dim(C ∩ A), j]_q` for `j` in `1..=jmax`, and `|A_a|` as enumerated.
fn moment_rows(
    code: &TensorCode,
    family: Family,
    jmax: usize,
    budget: &Budget,
) -> Result<(Vec<Vec<BigInt>>, Vec<BigInt>)> {
    let q = code.shape().q() as u64;
    let mut rows = Vec::with_capacity(code.n() + 1);
    let mut sizes = Vec::with_capacity(code.n() + 1);
    for a in 0..=code.n() {
        let members = enumerate_anticodes(code.shape(), family, a, budget)?;
        let mut row = vec![BigInt::zero(); jmax];
        for m in &members {
            let d = intersection_dim(code, m)?;
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += gaussian(q, d, j + 1);
            }
        }
        rows.push(row);
        sizes.push(BigInt::from(members.len()));
    }
    Ok((rows, sizes))
}

fn check_family(family: Family) -> Result<Family> {
    if !family.is_enumerable() {
        return Err(Error::NotEnumerable("perfect spaces"));
    }
    family.dual()
}

/// The binomial moments of `code` for `family` and its dual family.
pub fn binomial_moments(code: &TensorCode, family: Family, budget: &Budget) -> Result<MomentTable> {
    let dual = check_family(family)?;
    let k = code.k();
    let (values, sizes) = moment_rows(code, family, k, budget)?;
    let (dual_values, dual_sizes) = moment_rows(code, dual, k, budget)?;
    Ok(MomentTable {
        family,
        q: code.shape().q() as u64,
        n: code.n(),
        k,
        values,
        dual_values,
        sizes,
        dual_sizes,
    })
}

/// A cell `(a, j)` where one of the two closed forms for `B_a^(j)` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub a: usize,
    pub j: usize,
    pub expected: BigInt,
    pub found: BigInt,
}

/// Checks `B_a^(j) = 0` for `a < t_j` and `B_a^(j) = [k + a - n, j]_q |A_a|`
/// for `a > n - s_1^⊥`; `dual_s1` is `None` when `C^⊥ = 0`, in which case
/// the second form applies at every `a`.
pub fn bound_violation(
    table: &MomentTable,
    t: &[usize],
    dual_s1: Option<usize>,
) -> Option<BoundViolation> {
    let (n, k) = (table.n as i64, table.k as i64);
    for a in 0..=table.n {
        for j in 1..=table.k {
            let found = table.get(a, j);
            if a < t[j - 1] && !found.is_zero() {
                return Some(BoundViolation {
                    a,
                    j,
                    expected: BigInt::zero(),
                    found: found.clone(),
                });
            }
            let tail = dual_s1.is_none_or(|s| a as i64 > n - s as i64);
            if tail {
                let expected = qbinom_unchecked(table.q, k + a as i64 - n, j as i64)
                    * BigRational::from(table.sizes[a].clone());
                if BigRational::from(found.clone()) != expected {
                    return Some(BoundViolation {
                        a,
                        j,
                        expected: expected.to_integer(),
                        found: found.clone(),
                    });
                }
            }
        }
    }
    None
}

/// The members of an enumerable family ordered by inclusion.
pub struct FamilyLattice {
    shape: Shape,
    family: Family,
    members: Vec<Anticode>,
    spaces: Vec<Subspace>,
    index: HashMap<Anticode, usize>,
    poset: FinitePoset<usize>,
}

impl std::fmt::Debug for FamilyLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FamilyLattice({}, {} members)",
            self.family,
            self.members.len()
        )
    }
}

impl FamilyLattice {
    pub fn new(shape: &Shape, family: Family, budget: &Budget) -> Result<FamilyLattice> {
        check_family(family)?;
        let mut members = Vec::new();
        for a in 0..=shape.n() {
            members.extend(enumerate_anticodes(shape, family, a, budget)?);
        }
        let m = members.len() as u64;
        budget.charge("anticode pairs", m.saturating_mul(m))?;
        let spaces: Vec<Subspace> = members.iter().map(Anticode::to_subspace).collect();
        let index = members
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let ids: Vec<usize> = (0..members.len()).collect();
        let poset = FinitePoset::new(ids, |&x, &y| {
            spaces[x].dim() <= spaces[y].dim()
                && spaces[y].contains(&spaces[x]).expect("one ambient space")
        })?;
        Ok(FamilyLattice {
            shape: shape.clone(),
            family,
            members,
            spaces,
            index,
            poset,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Members by increasing dimension, in enumeration order within a dimension.
    pub fn members(&self) -> &[Anticode] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn index_of(&self, a: &Anticode) -> Option<usize> {
        self.index.get(&a.clone().canonical()).copied()
    }

    /// `counts[b][a] = |{(A', A) ∈ A_b × A_a : A' <= A}|`.
    pub fn interval_counts(&self) -> Vec<Vec<BigInt>> {
        let n = self.shape.n();
        let mut counts = vec![vec![BigInt::zero(); n + 1]; n + 1];
        for x in 0..self.len() {
            for y in 0..self.len() {
                if self.leq(x, y) {
                    counts[self.spaces[x].dim()][self.spaces[y].dim()] += 1;
                }
            }
        }
        counts
    }

    /// Sums per-member rows into per-dimension rows.
    pub fn aggregate(&self, per_member: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let width = per_member.first().map_or(0, Vec::len);
        let mut out = vec![vec![BigInt::zero(); width]; self.shape.n() + 1];
        for (x, row) in per_member.iter().enumerate() {
            for (cell, v) in out[self.spaces[x].dim()].iter_mut().zip(row) {
                *cell += v;
            }
        }
        out
    }

    fn meet_index(
        &self,
        x: usize,
        y: usize,
        cache: &mut HashMap<(usize, usize), usize>,
        budget: &Budget,
    ) -> Result<usize> {
        if self.leq(x, y) {
            return Ok(x);
        }
        if self.leq(y, x) {
            return Ok(y);
        }
        let key = (x.min(y), x.max(y));
        if let Some(&m) = cache.get(&key) {
            return Ok(m);
        }
        let meet = self.members[x].meet(&self.members[y], budget)?;
        let m = self.index_of(&meet).ok_or_else(|| {
            Error::Inconsistent(format!("meet {meet:?} is not an enumerated member"))
        })?;
        cache.insert(key, m);
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `B_A = Σ_{A' <= A} W_{A'}`.
    ToMoments,
    /// `W_{A'} = Σ_{A <= A'} μ(A, A') B_A`.
    ToDistribution,
}

/// Transforms a per-member table (one row per member of `lattice`, one
/// column per `j`) between moments and weight distribution.
pub fn bw_transform(
    lattice: &FamilyLattice,
    table: &[Vec<BigInt>],
    direction: Direction,
) -> Result<Vec<Vec<BigInt>>> {
    if table.len() != lattice.len() {
        return Err(Error::Invalid(format!(
            "expected {} member rows, got {}",
            lattice.len(),
            table.len()
        )));
    }
    let width = table.first().map_or(0, Vec::len);
    if table.iter().any(|r| r.len() != width) {
        return Err(Error::Invalid("ragged table".into()));
    }
    let m = lattice.len();
    let mut out = vec![vec![BigInt::zero(); width]; m];
    for (y, row) in out.iter_mut().enumerate() {
        for x in (0..m).filter(|&x| lattice.leq(x, y)) {
            match direction {
                Direction::ToMoments => {
                    for (c, v) in row.iter_mut().zip(&table[x]) {
                        *c += v;
                    }
                }
                Direction::ToDistribution => {
                    let mu = lattice.poset.mobius(x, y);
                    if !mu.is_zero() {
                        for (c, v) in row.iter_mut().zip(&table[x]) {
                            *c += mu * v;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `B_A^(j) = [dim(C ∩ A), j]_q` for every member `A` and `j` in `1..=k`.
pub fn member_moments(code: &TensorCode, lattice: &FamilyLattice) -> Result<Vec<Vec<BigInt>>> {
    let q = code.shape().q() as u64;
    lattice
        .spaces
        .iter()
        .map(|s| {
            let d = code.space().intersection_dim(s)?;
            Ok((1..=code.k()).map(|j| gaussian(q, d, j)).collect())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    /// `values[a][j - 1] = W_a^(j)`.
    pub values: Vec<Vec<BigInt>>,
    /// Per `j`: subcodes `D` whose family meet `⋀{B : D <= B}` does not contain
    /// `D`; they contribute to no `W_a^(j)`.
    pub unplaced: Vec<BigInt>,
}

impl WeightDistribution {
    /// Nonzero terms `(W_a^(j), n - a, a)` of `Σ_a W_a^(j) X^(n-a) Y^a`.
    pub fn enumerator(&self, j: usize) -> Vec<(BigInt, usize, usize)> {
        (0..=self.n)
            .filter(|&a| !self.values[a][j - 1].is_zero())
            .map(|a| (self.values[a][j - 1].clone(), self.n - a, a))
            .collect()
    }
}

/// Per-member weight distribution from the definition: each `j`-dimensional
/// subcode `D` is counted at the meet of all members containing it, when that
/// meet contains `D`.
pub fn member_distribution(
    code: &TensorCode,
    lattice: &FamilyLattice,
    budget: &Budget,
) -> Result<(Vec<Vec<BigInt>>, Vec<BigInt>)> {
    let (f, k) = (code.field(), code.k());
    // C ∩ A in the coordinates of the basis of C
    let local: Vec<Subspace> = lattice
        .spaces
        .iter()
        .map(|s| {
            let cap = code.space().intersect(s)?;
            let coords: Vec<Vec<u8>> = cap
                .basis()
                .iter()
                .map(|v| code.space().coordinates(v).expect("inside the code"))
                .collect();
            Ok(Subspace::span_unchecked(f, k, coords))
        })
        .collect::<Result<_>>()?;
    let top = lattice.len() - 1;
    let mut cache = HashMap::new();
    let mut out = vec![vec![BigInt::zero(); k]; lattice.len()];
    let mut unplaced = vec![BigInt::zero(); k];
    for j in 1..=k {
        for d in enumerate_subspaces(f, k, j, budget)? {
            let mut m = top;
            for x in 0..lattice.len() {
                if local[x].dim() >= j && !lattice.leq(m, x) && local[x].contains(&d)? {
                    m = lattice.meet_index(m, x, &mut cache, budget)?;
                }
            }
            if local[m].contains(&d)? {
                out[m][j - 1] += 1;
            } else {
                unplaced[j - 1] += 1;
            }
        }
    }
    Ok((out, unplaced))
}

pub fn weight_distribution(
    code: &TensorCode,
    family: Family,
    budget: &Budget,
) -> Result<WeightDistribution> {
    let lattice = FamilyLattice::new(code.shape(), family, budget)?;
    let (per_member, unplaced) = member_distribution(code, &lattice, budget)?;
    Ok(WeightDistribution {
        family,
        n: code.n(),
        k: code.k(),
        values: lattice.aggregate(&per_member),
        unplaced,
    })
}

/// Direct weight distribution next to the Möbius inversion of the moments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionReport {
    pub family: Family,
    pub direct: WeightDistribution,
    pub inverted: Vec<Vec<BigInt>>,
    pub verified: bool,
    /// First `(a, j)` where the two disagree.
    pub first_counterexample: Option<(usize, usize)>,
}

pub fn check_inversion(
    code: &TensorCode,
    family: Family,
    budget: &Budget,
) -> Result<InversionReport> {
    let lattice = FamilyLattice::new(code.shape(), family, budget)?;
    let (per_member, unplaced) = member_distribution(code, &lattice, budget)?;
    let direct = WeightDistribution {
        family,
        n: code.n(),
        k: code.k(),
        values: lattice.aggregate(&per_member),
        unplaced,
    };
    let moments = member_moments(code, &lattice)?;
    let inverted = lattice.aggregate(&bw_transform(
        &lattice,
        &moments,
        Direction::ToDistribution,
    )?);
    let first_counterexample = (0..=code.n())
        .flat_map(|a| (1..=code.k()).map(move |j| (a, j)))
        .find(|&(a, j)| direct.values[a][j - 1] != inverted[a][j - 1]);
    Ok(InversionReport {
        family,
        verified: first_counterexample.is_none(),
        direct,
        inverted,
        first_counterexample,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacWilliamsCell {
    pub a: usize,
    pub j: usize,
    pub lhs: BigInt,
    pub rhs: BigRational,
}

/// A member `A` of dimension `a` with `dim(C ∩ A) != dim(C^⊥ ∩ A^⊥) + k + a - n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionViolation {
    pub a: usize,
    pub anticode: String,
    pub code_side: usize,
    pub dual_side: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacWilliamsReport {
    pub family: Family,
    /// `B_a^(j)(C)`.
    pub moments: Vec<Vec<BigInt>>,
    /// `B̄_a^(p)(C^⊥)` for `p` in `1..=k`.
    pub dual_moments: Vec<Vec<BigInt>>,
    pub cells_checked: usize,
    pub verified: bool,
    pub first_counterexample: Option<MacWilliamsCell>,
    pub pairs_checked: usize,
    pub dimension_violation: Option<DimensionViolation>,
    /// Whether the closed-form dual family sizes match the enumerated ones.
    pub sizes_match: bool,
}

/// Checks `B_a^(j)(C) = Σ_{p=0}^{j} q^{p(k+a-n-j+p)} [k+a-n, j-p]_q B̄_{n-a}^(p)(C^⊥)`
/// in every cell, with `B̄^(0)` the number of dual family members.
pub fn macwilliams_moments(
    code: &TensorCode,
    family: Family,
    budget: &Budget,
) -> Result<MacWilliamsReport> {
    let dual_family = check_family(family)?;
    let (n, k, q) = (code.n(), code.k(), code.shape().q() as u64);
    let perp = code.dual();
    let (moments, _) = moment_rows(code, family, k, budget)?;
    let (dual_moments, dual_counts) = moment_rows(&perp, dual_family, k, budget)?;
    let closed: Vec<BigInt> = (0..=n)
        .map(|a| family_size(code.shape(), dual_family, a))
        .collect::<Result<_>>()?;
    let sizes_match = closed == dual_counts;

    let mut pairs_checked = 0;
    let mut dimension_violation = None;
    for a in 0..=n {
        for m in enumerate_anticodes(code.shape(), family, a, budget)? {
            let code_side = intersection_dim(code, &m)?;
            let dual_side = intersection_dim(&perp, &m.dual()?)?;
            pairs_checked += 1;
            if dimension_violation.is_none() && code_side + n != dual_side + k + a {
                dimension_violation = Some(DimensionViolation {
                    a,
                    anticode: format!("{m:?}"),
                    code_side,
                    dual_side,
                });
            }
        }
    }

    let mut first_counterexample = None;
    let mut cells_checked = 0;
    for a in 0..=n {
        let x = (k + a) as i64 - n as i64;
        for j in 1..=k {
            let ji = j as i64;
            let mut rhs = BigRational::zero();
            for p in 0..=j {
                let pi = p as i64;
                let b = if p == 0 {
                    closed[n - a].clone()
                } else {
                    dual_moments[n - a][p - 1].clone()
                };
                if b.is_zero() {
                    continue;
                }
                rhs += qpow(q, pi * (x - ji + pi))
                    * qbinom_unchecked(q, x, ji - pi)
                    * BigRational::from(b);
            }
            cells_checked += 1;
            let lhs = moments[a][j - 1].clone();
            if first_counterexample.is_none() && BigRational::from(lhs.clone()) != rhs {
                first_counterexample = Some(MacWilliamsCell { a, j, lhs, rhs });
            }
        }
    }
    Ok(MacWilliamsReport {
        family,
        moments,
        dual_moments,
        cells_checked,
        verified: first_counterexample.is_none() && dimension_violation.is_none() && sizes_match,
        first_counterexample,
        pairs_checked,
        dimension_violation,
        sizes_match,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TbmdReport {
    pub family: Family,
    pub n: usize,
    /// `t_j(C)` for the family.
    pub weights: Vec<usize>,
    /// `s_1(C^⊥)`; `None` when `C^⊥ = 0`.
    pub dual_s1: Option<usize>,
    /// `n - s_1^⊥ - t_j`, absent when `C^⊥ = 0`.
    pub margins: Vec<Option<i64>>,
    pub tbmd: Vec<bool>,
    pub minimal: Option<usize>,
}

/// `C` is `j`-TBMD iff `n - s_1(C^⊥) - t_j(C) < 0`.
pub fn tbmd_classify(code: &TensorCode, family: Family, budget: &Budget) -> Result<TbmdReport> {
    check_family(family)?;
    let n = code.n();
    let t = weights(code, family, budget)?;
    let perp = code.dual();
    let dual_s1 = if perp.k() == 0 {
        None
    } else {
        Some(generalized_dual_weight(&perp, family, 1, budget)?)
    };
    let margins: Vec<Option<i64>> = t
        .iter()
        .map(|&tj| dual_s1.map(|s| n as i64 - s as i64 - tj as i64))
        .collect();
    let tbmd: Vec<bool> = margins.iter().map(|m| m.is_none_or(|m| m < 0)).collect();
    let minimal = tbmd.iter().position(|&b| b).map(|i| i + 1);
    Ok(TbmdReport {
        family,
        n,
        weights: t,
        dual_s1,
        margins,
        tbmd,
        minimal,
    })
}

/// For codes of 2-tensors: `n_1 - d_j - d(C^⊥) < 0` with `d_j = t_j^D / n_2`,
/// where `n_1 <= n_2` are the sorted dims.
pub fn is_jbmd_r2(code: &TensorCode, j: usize, budget: &Budget) -> Result<bool> {
    if code.shape().order() != 2 {
        return Err(Error::Shape("j-BMD is defined for 2-tensors".into()));
    }
    if j == 0 || j > code.k() {
        return Err(Error::Invalid(format!(
            "index {j} outside 1..={}",
            code.k()
        )));
    }
    let perp = code.dual();
    if perp.k() == 0 {
        return Ok(true);
    }
    let dj = delsarte_rank_weights(code, budget)?[j - 1];
    let dperp = delsarte_rank_weights(&perp, budget)?[0];
    Ok((code.shape().min_dim() as i64) - (dj as i64) - (dperp as i64) < 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::Field;
    use crate::subspace::all_subspaces;
    use num_traits::ToPrimitive;

    fn shape(p: u32, dims: &[usize]) -> Shape {
        Shape::new(&Field::prime(p).unwrap(), dims).unwrap()
    }

    fn code(s: &Shape, rows: &[Vec<u8>]) -> TensorCode {
        TensorCode::from_rows(s, rows).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_and_full_codes() {
        let s = shape(2, &[2, 2]);
        let b = Budget::default();
        let z = binomial_moments(&TensorCode::zero(&s), Family::ClosureType, &b).unwrap();
        assert!(z.values.iter().all(Vec::is_empty));
        let full = TensorCode::full(&s);
        let t = binomial_moments(&full, Family::Delsarte, &b).unwrap();
        for a in 0..=4 {
            assert_eq!(t.get(a, 1), &(gaussian(2, a, 1) * &t.sizes[a]));
        }
        let w = weight_distribution(&TensorCode::zero(&s), Family::ClosureType, &b).unwrap();
        assert!(w.values.iter().all(Vec::is_empty));
    }

    #[test]
    fn moments_against_pairs_of_subspaces() {
        // B_a^(1) for <X> by looping over all pairs of mode subspaces directly
        let s = shape(2, &[2, 2]);
        let b = Budget::default();
        let x = vec![1, 1, 0, 1];
        let c = code(&s, std::slice::from_ref(&x));
        let table = binomial_moments(&c, Family::ClosureType, &b).unwrap();
        let subs = all_subspaces(s.field(), 2, &b).unwrap();
        assert_eq!(subs.len(), 5);
        let mut expect = vec![BigInt::zero(); 5];
        let mut seen = std::collections::HashSet::new();
        for u in &subs {
            for v in &subs {
                let p = crate::anticode::product_subspace(&s, &[u.clone(), v.clone()]);
                if seen.insert(p.clone()) && p.contains_vector(&x) {
                    expect[p.dim()] += 1;
                }
            }
        }
        let got: Vec<BigInt> = table.values.iter().map(|r| r[0].clone()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn simple_tensor_distribution() {
        let s = shape(2, &[2, 2]);
        let c = code(&s, &[vec![1, 0, 0, 0]]);
        let w = weight_distribution(&c, Family::ClosureType, &Budget::default()).unwrap();
        let col: Vec<BigInt> = w.values.iter().map(|r| r[0].clone()).collect();
        assert_eq!(col, big(&[0, 1, 0, 0, 0]));
        assert_eq!(w.enumerator(1), vec![(BigInt::from(1), 3, 1)]);
    }

    #[test]
    fn delsarte_interval_counts() {
        // zero, three lines in each mode, full
        let s = shape(2, &[2, 2]);
        let l = FamilyLattice::new(&s, Family::Delsarte, &Budget::default()).unwrap();
        assert_eq!(l.len(), 8);
        let c = l.interval_counts();
        assert_eq!(c[0], big(&[1, 0, 6, 0, 1]));
        assert_eq!(c[2], big(&[0, 0, 6, 0, 6]));
        assert_eq!(c[4], big(&[0, 0, 0, 0, 1]));
    }

    #[test]
    fn transforms_round_trip() {
        let s = shape(3, &[2, 2]);
        let l = FamilyLattice::new(&s, Family::ClosureType, &Budget::default()).unwrap();
        let table: Vec<Vec<BigInt>> = (0..l.len())
            .map(|i| big(&[(i * 7 % 5) as i64 - 2, i as i64]))
            .collect();
        let w = bw_transform(&l, &table, Direction::ToDistribution).unwrap();
        assert_eq!(bw_transform(&l, &w, Direction::ToMoments).unwrap(), table);
        let zero = vec![big(&[0]); l.len()];
        assert_eq!(bw_transform(&l, &zero, Direction::ToMoments).unwrap(), zero);
    }

    #[test]
    fn closure_type_inversion_and_totals() {
        let s = shape(2, &[2, 3]);
        let c = code(&s, &[vec![1, 0, 1, 0, 1, 1], vec![0, 1, 0, 0, 0, 1]]);
        let r = check_inversion(&c, Family::ClosureType, &Budget::default()).unwrap();
        assert!(r.verified, "{r:?}");
        for j in 1..=2 {
            let total: BigInt = r.direct.values.iter().map(|row| &row[j - 1]).sum();
            assert_eq!(total, gaussian(2, 2, j));
        }
    }

    #[test]
    fn shared_line_in_two_modes_is_unplaced() {
        // e1⊗e1 lies in a mode-0 line and in a mode-1 line, whose meet is zero
        let s = shape(2, &[2, 2]);
        let c = code(&s, &[vec![1, 0, 0, 0]]);
        let r = check_inversion(&c, Family::Delsarte, &Budget::default()).unwrap();
        assert_eq!(r.direct.unplaced, big(&[1]));
        assert!(!r.verified);
    }

    #[test]
    fn macwilliams_on_small_codes() {
        let s = shape(2, &[2, 2]);
        let b = Budget::default();
        for x in 1u8..16 {
            let v: Vec<u8> = (0..4).map(|i| (x >> i) & 1).collect();
            let c = code(&s, &[v]);
            for fam in [
                Family::ClosureType,
                Family::Delsarte,
                Family::Ravagnani,
                Family::DualClosureType,
            ] {
                let r = macwilliams_moments(&c, fam, &b).unwrap();
                assert!(r.verified, "{fam} {x}: {r:?}");
                assert_eq!(
                    r.pairs_checked,
                    (0..=4)
                        .map(|a| family_size(&s, fam, a).unwrap())
                        .sum::<BigInt>()
                        .to_usize()
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn closed_forms_hold() {
        let s = shape(3, &[2, 3]);
        let b = Budget::default();
        let c = code(
            &s,
            &[
                vec![1, 2, 0, 0, 1, 1],
                vec![0, 1, 1, 2, 0, 1],
                vec![1, 1, 1, 1, 1, 1],
            ],
        );
        for fam in [Family::ClosureType, Family::Delsarte, Family::Ravagnani] {
            let table = binomial_moments(&c, fam, &b).unwrap();
            let t = weights(&c, fam, &b).unwrap();
            let s1 = generalized_dual_weight(&c.dual(), fam, 1, &b).unwrap();
            assert_eq!(bound_violation(&table, &t, Some(s1)), None, "{fam}");
        }
    }

    #[test]
    fn perfect_family_rejected() {
        let s = shape(2, &[2, 2]);
        let c = code(&s, &[vec![1, 0, 0, 1]]);
        assert!(binomial_moments(&c, Family::Perfect, &Budget::default()).is_err());
        assert!(tbmd_classify(&c, Family::Perfect, &Budget::default()).is_err());
    }

    #[test]
    fn jbmd_needs_two_modes() {
        let s = shape(2, &[2, 2, 2]);
        let c = code(&s, &[vec![1, 0, 0, 0, 0, 0, 0, 1]]);
        assert!(is_jbmd_r2(&c, 1, &Budget::default()).is_err());
    }
}
