//! Subspaces of GF(q)^n in canonical reduced row-echelon form.

use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gfq::Field;
use crate::linalg;
use crate::qcomb::gaussian;

/// A subspace given by its reduced row-echelon basis; equality is equality of
/// the canonical bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    n: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r:?}")?;
        }
        write!(f, "> <= GF({})^{}", self.field.q(), self.n)
    }
}

impl Subspace {
    pub fn zero(field: &Field, n: usize) -> Self {
        Subspace {
            field: field.clone(),
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
            .collect();
        Subspace {
            field: field.clone(),
            n,
            rows,
            pivots: (0..n).collect(),
        }
    }

    /// The span of `vectors`, which must all have length `n`.
    pub fn span(field: &Field, n: usize, vectors: &[Vec<u8>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::Shape(format!(
                "vector of length {} in GF(q)^{n}",
                v.len()
            )));
        }
        if let Some(&x) = vectors.iter().flatten().find(|&&x| x as usize >= field.q()) {
            return Err(Error::Invalid(format!(
                "{x} is not an element of {field:?}"
            )));
        }
        Ok(Self::span_unchecked(field, n, vectors.to_vec()))
    }

    pub(crate) fn span_unchecked(field: &Field, n: usize, mut rows: Vec<Vec<u8>>) -> Self {
        let pivots = linalg::rref_in_place(field, &mut rows);
        Subspace {
            field: field.clone(),
            n,
            rows,
            pivots,
        }
    }

    pub(crate) fn from_rref(
        field: &Field,
        n: usize,
        rows: Vec<Vec<u8>>,
        pivots: Vec<usize>,
    ) -> Self {
        Subspace {
            field: field.clone(),
            n,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::Shape(format!(
                "subspaces of GF({})^{} and GF({})^{}",
                self.field.q(),
                self.n,
                other.field.q(),
                other.n
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        v.len() == self.n && linalg::in_span(&self.field, &self.rows, &self.pivots, v)
    }

    /// Coordinates of `v` in the canonical basis, if `v` is in the subspace.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        if v.len() != self.n {
            return None;
        }
        linalg::coordinates(&self.field, &self.rows, &self.pivots, v)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(other.dim() <= self.dim() && other.rows.iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::span_unchecked(&self.field, self.n, rows))
    }

    /// Intersection via `U ∩ V = (U^⊥ + V^⊥)^⊥`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        Ok(self
            .orthogonal_complement()
            .sum(&other.orthogonal_complement())?
            .orthogonal_complement())
    }

    /// Complement under the dot product `x·y = Σ x_j y_j`.
    pub fn orthogonal_complement(&self) -> Subspace {
        let rows = linalg::nullspace(&self.field, &self.rows, &self.pivots, self.n);
        Self::span_unchecked(&self.field, self.n, rows)
    }

    /// Dimension of the intersection, without building it.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum(other)?.dim())
    }

    /// The image under a linear map given by the images of the standard basis.
    pub fn map(&self, images: &[Vec<u8>], target_dim: usize) -> Subspace {
        let rows = self
            .rows
            .iter()
            .map(|r| linalg::combine(&self.field, r, images, target_dim))
            .collect();
        Self::span_unchecked(&self.field, target_dim, rows)
    }
}

/// Streams every `d`-dimensional subspace of `GF(q)^n` exactly once.
///
/// Subspaces are generated directly as echelon matrices: pivot sets in
/// lexicographic order, and for each pivot set the free entries in counter order.
pub fn enumerate_subspaces(
    field: &Field,
    n: usize,
    d: usize,
    budget: &Budget,
) -> Result<SubspaceIter> {
    if d > n {
        return Err(Error::Invalid(format!(
            "no {d}-dimensional subspaces of a {n}-dimensional space"
        )));
    }
    let count = gaussian(field.q() as u64, n, d);
    let count: u64 = count.try_into().map_err(|_| Error::Budget {
        what: "subspaces",
        limit: budget.objects_limit(),
    })?;
    budget.charge("subspaces", count)?;
    Ok(SubspaceIter::new(field, n, d))
}

pub struct SubspaceIter {
    field: Field,
    n: usize,
    d: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u8>,
    done: bool,
}

impl SubspaceIter {
    pub(crate) fn new(field: &Field, n: usize, d: usize) -> Self {
        let mut it = SubspaceIter {
            field: field.clone(),
            n,
            d,
            pivots: (0..d).collect(),
            free: Vec::new(),
            counter: Vec::new(),
            done: false,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        self.free.clear();
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.n {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.counter = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let (n, d) = (self.n, self.d);
        let mut i = d;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - d + i {
                self.pivots[i] += 1;
                for j in i + 1..d {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let mut rows = vec![vec![0u8; self.n]; self.d];
        for (r, &p) in self.pivots.iter().enumerate() {
            rows[r][p] = 1;
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.counter) {
            rows[r][c] = v;
        }
        let out = Subspace::from_rref(&self.field, self.n, rows, self.pivots.clone());
        // advance
        let q = self.field.q() as u8;
        let mut i = self.counter.len();
        loop {
            if i == 0 {
                if self.next_pivots() {
                    self.reset_free();
                } else {
                    self.done = true;
                }
                break;
            }
            i -= 1;
            self.counter[i] += 1;
            if self.counter[i] < q {
                break;
            }
            self.counter[i] = 0;
        }
        Some(out)
    }
}

/// All subspaces of `GF(q)^n`, by increasing dimension.
pub fn all_subspaces(field: &Field, n: usize, budget: &Budget) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for d in 0..=n {
        out.extend(enumerate_subspaces(field, n, d, budget)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn sums_and_intersections() {
        let f2 = f(2);
        let a = Subspace::span(&f2, 2, &[vec![1, 0]]).unwrap();
        let b = Subspace::span(&f2, 2, &[vec![0, 1]]).unwrap();
        assert!(a.sum(&b).unwrap().is_full());
        assert_eq!(a.intersect(&a).unwrap(), a);

        let f3 = f(3);
        let u = Subspace::span(&f3, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let v = Subspace::span(&f3, 3, &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(
            u.intersect(&v).unwrap(),
            Subspace::span(&f3, 3, &[vec![0, 1, 0]]).unwrap()
        );
    }

    #[test]
    fn complements() {
        let f2 = f(2);
        assert!(Subspace::full(&f2, 3).orthogonal_complement().is_zero());
        let a = Subspace::span(&f2, 2, &[vec![1, 0]]).unwrap();
        assert_eq!(
            a.orthogonal_complement(),
            Subspace::span(&f2, 2, &[vec![0, 1]]).unwrap()
        );
        let f3 = f(3);
        let s = Subspace::span(&f3, 3, &[vec![1, 1, 1]]).unwrap();
        let c = s.orthogonal_complement();
        assert_eq!(c.dim(), 2);
        assert!(c
            .basis()
            .iter()
            .all(|v| linalg::dot(&f3, v, &[1, 1, 1]) == 0));
    }

    #[test]
    fn ambient_mismatch() {
        let f2 = f(2);
        assert!(Subspace::zero(&f2, 2).sum(&Subspace::zero(&f2, 3)).is_err());
        assert!(Subspace::zero(&f2, 2)
            .sum(&Subspace::zero(&f(3), 2))
            .is_err());
    }

    #[test]
    fn enumeration_counts() {
        let b = Budget::default();
        assert_eq!(enumerate_subspaces(&f(2), 2, 1, &b).unwrap().count(), 3);
        assert_eq!(enumerate_subspaces(&f(3), 3, 2, &b).unwrap().count(), 13);
        let zero: Vec<_> = enumerate_subspaces(&f(3), 4, 0, &b).unwrap().collect();
        assert_eq!(zero, vec![Subspace::zero(&f(3), 4)]);
    }

    #[test]
    fn enumeration_respects_budget() {
        let b = Budget::new(10, 10);
        assert!(enumerate_subspaces(&f(3), 4, 2, &b).is_err());
    }
}
