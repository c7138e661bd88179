//! Generalized tensor weights `t_j` and dual weights `s_j` for each anticode
//! family, and Wei-type duality for Ravagnani-type weights.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::anticode::{enumerate_anticodes, family_size, intersection_dim, Family};
use crate::budget::Budget;
use crate::code::TensorCode;
use crate::error::{Error, Result};
use crate::qcomb::gaussian;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    pub family: Family,
    pub weights: Vec<usize>,
    pub dual_weights: Option<Vec<usize>>,
}

fn check_j(code: &TensorCode, j: usize) -> Result<()> {
    if j == 0 || j > code.k() {
        return Err(Error::Invalid(format!(
            "weight index {j} outside 1..={}",
            code.k()
        )));
    }
    Ok(())
}

/// `min{dim A : A ∈ family, dim(C ∩ A) >= j}` for every `j` in `js`, scanning
/// members by increasing dimension and stopping once all are settled.
fn scan_members(
    code: &TensorCode,
    family: Family,
    js: &[usize],
    budget: &Budget,
) -> Result<Vec<usize>> {
    let mut best: Vec<Option<usize>> = vec![None; js.len()];
    let need = js.iter().copied().max().unwrap_or(0);
    for a in 0..=code.n() {
        let mut top = 0;
        for m in enumerate_anticodes(code.shape(), family, a, budget)? {
            top = top.max(intersection_dim(code, &m)?);
            if top >= need {
                break;
            }
        }
        for (b, &j) in best.iter_mut().zip(js) {
            if b.is_none() && top >= j {
                *b = Some(a);
            }
        }
        if best.iter().all(Option::is_some) {
            break;
        }
    }
    Ok(best
        .into_iter()
        .map(|b| b.expect("the full space meets every code in full"))
        .collect())
}

fn member_count(code: &TensorCode, family: Family) -> Result<BigInt> {
    (0..=code.n())
        .map(|a| family_size(code.shape(), family, a))
        .sum()
}

/// `t_j` as the minimum over `j`-dimensional subcodes `D` of `f(D)`, where
/// `f(D)` is the dimension of the least family member containing `D`.
/// `f` returns `None` when the value exceeds the given cap.
fn scan_subcodes<F>(
    code: &TensorCode,
    j: usize,
    lower: usize,
    budget: &Budget,
    mut f: F,
) -> Result<usize>
where
    F: FnMut(&TensorCode, usize) -> Result<Option<usize>>,
{
    let mut best = usize::MAX;
    for d in code.subcodes(j, budget)? {
        if let Some(v) = f(&d, best.saturating_sub(1))? {
            best = best.min(v);
        }
        if best <= lower {
            break;
        }
    }
    Ok(best)
}

fn perfect_weight(code: &TensorCode, j: usize, lower: usize, budget: &Budget) -> Result<usize> {
    scan_subcodes(code, j, lower.max(j), budget, |d, cap| {
        d.tensor_rank_at_most(cap, budget)
    })
}

fn closure_weight_by_subcodes(code: &TensorCode, j: usize, budget: &Budget) -> Result<usize> {
    scan_subcodes(code, j, j, budget, |d, cap| {
        Ok(Some(d.closure_dim()).filter(|&v| v <= cap))
    })
}

/// Whether subcode enumeration is cheaper than scanning all closure-type anticodes.
fn subcodes_cheaper(code: &TensorCode, js: &[usize]) -> Result<bool> {
    let q = code.field().q() as u64;
    let subs: BigInt = js.iter().map(|&j| gaussian(q, code.k(), j)).sum();
    Ok(subs < member_count(code, Family::ClosureType)?)
}

/// The `j`-th generalized tensor weight with respect to `family`.
pub fn generalized_weight(
    code: &TensorCode,
    family: Family,
    j: usize,
    budget: &Budget,
) -> Result<usize> {
    check_j(code, j)?;
    Ok(weights_for(code, family, &[j], budget)?[0])
}

fn weights_for(
    code: &TensorCode,
    family: Family,
    js: &[usize],
    budget: &Budget,
) -> Result<Vec<usize>> {
    match family {
        Family::Perfect => {
            let mut out = Vec::with_capacity(js.len());
            let mut prev: Option<(usize, usize)> = None;
            for &j in js {
                // t^ps is strictly increasing, so an earlier weight bounds this one from below
                let lower = prev.map_or(j, |(pj, pt)| if pj < j { pt + (j - pj) } else { j });
                let t = perfect_weight(code, j, lower, budget)?;
                prev = Some((j, t));
                out.push(t);
            }
            Ok(out)
        }
        Family::ClosureType if subcodes_cheaper(code, js)? => js
            .iter()
            .map(|&j| closure_weight_by_subcodes(code, j, budget))
            .collect(),
        _ => scan_members(code, family, js, budget),
    }
}

/// `(t_1, …, t_k)`.
pub fn weights(code: &TensorCode, family: Family, budget: &Budget) -> Result<Vec<usize>> {
    let js: Vec<usize> = (1..=code.k()).collect();
    if js.is_empty() {
        return Ok(Vec::new());
    }
    weights_for(code, family, &js, budget)
}

/// The `j`-th generalized dual tensor weight: members of the dual family.
pub fn generalized_dual_weight(
    code: &TensorCode,
    family: Family,
    j: usize,
    budget: &Budget,
) -> Result<usize> {
    check_j(code, j)?;
    Ok(scan_members(code, family.dual()?, &[j], budget)?[0])
}

/// `(s_1, …, s_k)`.
pub fn dual_weights(code: &TensorCode, family: Family, budget: &Budget) -> Result<Vec<usize>> {
    let dual = family.dual()?;
    let js: Vec<usize> = (1..=code.k()).collect();
    if js.is_empty() {
        return Ok(Vec::new());
    }
    if dual == family {
        return weights_for(code, family, &js, budget);
    }
    scan_members(code, dual, &js, budget)
}

/// Both profiles, checked against the properties that hold for every code.
pub fn weight_profile(code: &TensorCode, family: Family, budget: &Budget) -> Result<WeightProfile> {
    let weights = weights(code, family, budget)?;
    let dual_weights = match family {
        Family::Perfect => None,
        _ => Some(dual_weights(code, family, budget)?),
    };
    let p = WeightProfile {
        family,
        weights,
        dual_weights,
    };
    validate_profile(code, &p)?;
    Ok(p)
}

fn validate_profile(code: &TensorCode, p: &WeightProfile) -> Result<()> {
    let bad = |what: &str| Err(Error::Inconsistent(format!("{} weights: {what}", p.family)));
    let t = &p.weights;
    if t.windows(2).any(|w| w[0] > w[1]) {
        return bad("t_j is not monotone");
    }
    if let Some(s) = &p.dual_weights {
        if s.windows(2).any(|w| w[0] > w[1]) {
            return bad("s_j is not monotone");
        }
    }
    if t.iter().enumerate().any(|(i, &tj)| tj < i + 1) {
        return bad("t_j < j");
    }
    match p.family {
        Family::Perfect if t.windows(2).any(|w| w[0] >= w[1]) => {
            return bad("t_j^ps is not strictly increasing")
        }
        Family::Delsarte | Family::Ravagnani if p.dual_weights.as_ref() != Some(t) => {
            return bad("t_j != s_j")
        }
        Family::Ravagnani => {
            let step = code.n() / code.shape().min_dim();
            for j in 0..t.len() {
                if j + step < t.len() && t[j] + step > t[j + step] {
                    return bad("t_j + n/n_1 > t_{j+n/n_1}");
                }
                let k = code.k();
                let n1 = code.shape().min_dim();
                let h = (n1 * (k - (j + 1))) / code.n();
                if t[j] > code.n() - step * h {
                    return bad("upper bound on t_j^R violated");
                }
            }
        }
        _ => {}
    }
    Ok(())
}

/// The two index sets of the Wei-type duality for one residue `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeiSets {
    pub p: usize,
    /// `{(n_1/n) t^R_{p+i n/n_1}(C^⊥) : 1 <= p + i n/n_1 <= n - k}`.
    pub dual_set: BTreeSet<usize>,
    /// `{n_1 + 1 - (n_1/n) t^R_{p+k+i n/n_1}(C) : 1 <= p + k + i n/n_1 <= k}`.
    pub complement_set: BTreeSet<usize>,
    /// Whether `dual_set = {1, …, n_1} \ complement_set`.
    pub holds: bool,
}

/// Indices `p + k + i·step` in `lo..=hi` over all integers `i`.
fn residue_indices(base: i64, step: i64, lo: i64, hi: i64) -> impl Iterator<Item = usize> {
    let first = lo + (base - lo).rem_euclid(step);
    (first..=hi).step_by(step as usize).map(|x| x as usize)
}

/// `S_p(C^⊥)` and `S̄_p(C)` for every `p` in `1..=n/n_1`, from the two
/// Ravagnani-type profiles.
pub fn wei_duality_sets(code: &TensorCode, budget: &Budget) -> Result<Vec<WeiSets>> {
    let (n, k) = (code.n(), code.k());
    if k == 0 || k == n {
        return Err(Error::Invalid(
            "Wei duality needs 1 <= dim C <= n - 1".into(),
        ));
    }
    let t = weights(code, Family::Ravagnani, budget)?;
    let tp = weights(&code.dual(), Family::Ravagnani, budget)?;
    wei_sets_from_profiles(code.shape().min_dim(), n, &t, &tp)
}

/// The sets computed from given profiles `t` of `C` and `tp` of `C^⊥`.
pub fn wei_sets_from_profiles(
    n1: usize,
    n: usize,
    t: &[usize],
    tp: &[usize],
) -> Result<Vec<WeiSets>> {
    let step = n / n1;
    let k = t.len();
    let scaled = |v: usize| -> Result<usize> {
        if !v.is_multiple_of(step) {
            return Err(Error::Inconsistent(format!(
                "Ravagnani weight {v} is not a multiple of {step}"
            )));
        }
        Ok(v / step)
    };
    let mut out = Vec::with_capacity(step);
    for p in 1..=step {
        let dual_set = residue_indices(p as i64, step as i64, 1, (n - k) as i64)
            .map(|i| scaled(tp[i - 1]))
            .collect::<Result<BTreeSet<_>>>()?;
        let complement_set = residue_indices((p + k) as i64, step as i64, 1, k as i64)
            .map(|i| Ok(n1 + 1 - scaled(t[i - 1])?))
            .collect::<Result<BTreeSet<_>>>()?;
        let expect: BTreeSet<usize> = (1..=n1).filter(|x| !complement_set.contains(x)).collect();
        out.push(WeiSets {
            p,
            holds: dual_set == expect,
            dual_set,
            complement_set,
        });
    }
    Ok(out)
}

/// `t^R_{p+i·step}(C^⊥) != n + step - t^R_{p+k+j·step}(C)` for all admissible `p, i, j`.
pub fn wei_profiles_disjoint(n1: usize, n: usize, t: &[usize], tp: &[usize]) -> bool {
    let step = n / n1;
    let k = t.len();
    (1..=step).all(|p| {
        residue_indices(p as i64, step as i64, 1, (n - k) as i64).all(|a| {
            residue_indices((p + k) as i64, step as i64, 1, k as i64)
                .all(|b| tp[a - 1] + t[b - 1] != n + step)
        })
    })
}

/// `d_j = t_j^D / n_2` for codes of 2-tensors, `n_2` the larger dim.
pub fn delsarte_rank_weights(code: &TensorCode, budget: &Budget) -> Result<Vec<usize>> {
    if code.shape().order() != 2 {
        return Err(Error::Shape("Delsarte rank weights need 2-tensors".into()));
    }
    let n2 = code.shape().max_dim();
    Ok(weights(code, Family::Delsarte, budget)?
        .into_iter()
        .map(|t| t / n2)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::Field;
    use crate::tensor::{Shape, Tensor};

    fn code(p: u32, dims: &[usize], gens: &[Vec<u8>]) -> TensorCode {
        let s = Shape::new(&Field::prime(p).unwrap(), dims).unwrap();
        TensorCode::from_rows(&s, gens).unwrap()
    }

    #[test]
    fn simple_tensor_code() {
        let f = Field::prime(2).unwrap();
        let x = Tensor::simple(&f, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let c = TensorCode::from_basis(&[x]).unwrap();
        let b = Budget::default();
        assert_eq!(weights(&c, Family::Perfect, &b).unwrap(), vec![1]);
        assert_eq!(weights(&c, Family::ClosureType, &b).unwrap(), vec![1]);
    }

    #[test]
    fn m_and_n_are_not_comparable() {
        let b = Budget::default();
        let m = code(2, &[3, 3], &[vec![1, 0, 0, 0, 0, 0, 0, 0, 0]]);
        assert_eq!(
            generalized_weight(&m, Family::ClosureType, 1, &b).unwrap(),
            1
        );
        assert_eq!(
            generalized_dual_weight(&m, Family::ClosureType, 1, &b).unwrap(),
            3
        );
        let n = code(2, &[3, 3], &[vec![0, 0, 1, 0, 1, 0, 1, 0, 0]]);
        assert_eq!(
            generalized_weight(&n, Family::ClosureType, 1, &b).unwrap(),
            9
        );
        assert_eq!(
            generalized_dual_weight(&n, Family::ClosureType, 1, &b).unwrap(),
            7
        );
    }

    #[test]
    fn symmetric_code_dual_weight() {
        let c = code(3, &[3, 3], &[vec![0, 1, 0, 1, 0, 0, 0, 0, 0]]);
        let b = Budget::default();
        assert_eq!(
            generalized_dual_weight(&c, Family::ClosureType, 1, &b).unwrap(),
            5
        );
        assert_eq!(c.min_distance(&b).unwrap(), 2);
    }

    #[test]
    fn both_closure_routes_agree() {
        let c = code(
            2,
            &[2, 2, 2],
            &[vec![1, 0, 0, 1, 0, 1, 1, 0], vec![0, 0, 1, 1, 0, 0, 0, 1]],
        );
        let b = Budget::default();
        let by_members = scan_members(&c, Family::ClosureType, &[1, 2], &b).unwrap();
        let by_subcodes: Vec<usize> = [1, 2]
            .iter()
            .map(|&j| closure_weight_by_subcodes(&c, j, &b).unwrap())
            .collect();
        assert_eq!(by_members, by_subcodes);
    }

    #[test]
    fn index_out_of_range() {
        let c = code(2, &[2, 2], &[vec![1, 0, 0, 1]]);
        assert!(generalized_weight(&c, Family::ClosureType, 2, &Budget::default()).is_err());
        assert!(generalized_dual_weight(&c, Family::Perfect, 1, &Budget::default()).is_err());
    }

    #[test]
    fn wei_sets_partition() {
        let c = code(2, &[2, 2], &[vec![1, 0, 0, 1]]);
        let sets = wei_duality_sets(&c, &Budget::default()).unwrap();
        assert_eq!(sets.len(), 2);
        assert!(sets.iter().all(|s| s.holds), "{sets:?}");
    }
}
