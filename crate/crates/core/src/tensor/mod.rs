//! r-tensors over GF(q): fibers, slices, the form `*`, flattenings and closures.
//!
//! Entries are stored flat with the last index fastest: `X[j_1, …, j_r]` lives
//! at offset `Σ j_i · ∏_{t>i} n_t` (0-based indices throughout the API).

mod display;
mod rank;

pub use rank::{rank_one_factors, tensor_rank, tensor_rank_at_most, SimpleDecomposition};

use crate::error::{Error, Result};
use crate::gfq::Field;
use crate::linalg;
use crate::subspace::Subspace;

/// Field and dimensions of a tensor space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    field: Field,
    dims: Vec<usize>,
}

impl Shape {
    pub fn new(field: &Field, dims: &[usize]) -> Result<Shape> {
        if dims.len() < 2 {
            return Err(Error::Shape(format!(
                "tensors need at least 2 modes, got {}",
                dims.len()
            )));
        }
        if dims.contains(&0) {
            return Err(Error::Shape("every mode needs dimension >= 1".into()));
        }
        Ok(Shape {
            field: field.clone(),
            dims: dims.to_vec(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension `n = ∏ n_i`.
    pub fn n(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn q(&self) -> usize {
        self.field.q()
    }

    pub fn min_dim(&self) -> usize {
        *self.dims.iter().min().unwrap()
    }

    pub fn max_dim(&self) -> usize {
        *self.dims.iter().max().unwrap()
    }
}

pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// Flat entries of `u_1 ⊗ … ⊗ u_r`.
pub(crate) fn kron(field: &Field, factors: &[Vec<u8>]) -> Vec<u8> {
    let mut out = vec![1u8];
    for f in factors {
        let mut next = Vec::with_capacity(out.len() * f.len());
        for &a in &out {
            for &b in f {
                next.push(field.mul(a, b));
            }
        }
        out = next;
    }
    out
}

/// Rows are the mode-`i` slices (index `t` at mode `i` fixed), each flattened
/// over the remaining modes in their natural order. The columns of this
/// matrix are the mode-`i` fibers.
pub(crate) fn flatten_mode(dims: &[usize], entries: &[u8], i: usize) -> Vec<Vec<u8>> {
    let st = strides(dims);
    let n: usize = dims.iter().product();
    let cols = n / dims[i];
    let mut rows = vec![Vec::with_capacity(cols); dims[i]];
    for (off, &x) in entries.iter().enumerate() {
        rows[(off / st[i]) % dims[i]].push(x);
    }
    rows
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor {
    field: Field,
    dims: Vec<usize>,
    entries: Vec<u8>,
}

impl Tensor {
    pub fn new(field: &Field, dims: &[usize], entries: Vec<u8>) -> Result<Tensor> {
        let shape = Shape::new(field, dims)?;
        if entries.len() != shape.n() {
            return Err(Error::Shape(format!(
                "{} entries for dims {dims:?}",
                entries.len()
            )));
        }
        if let Some(&x) = entries.iter().find(|&&x| x as usize >= field.q()) {
            return Err(Error::Invalid(format!(
                "{x} is not an element of {field:?}"
            )));
        }
        Ok(Tensor {
            field: field.clone(),
            dims: dims.to_vec(),
            entries,
        })
    }

    pub(crate) fn from_parts(field: &Field, dims: &[usize], entries: Vec<u8>) -> Tensor {
        debug_assert_eq!(entries.len(), dims.iter().product::<usize>());
        Tensor {
            field: field.clone(),
            dims: dims.to_vec(),
            entries,
        }
    }

    pub fn zeros(shape: &Shape) -> Tensor {
        Tensor {
            field: shape.field.clone(),
            dims: shape.dims.clone(),
            entries: vec![0; shape.n()],
        }
    }

    /// `u_1 ⊗ … ⊗ u_r`.
    pub fn simple(field: &Field, factors: &[Vec<u8>]) -> Result<Tensor> {
        let dims: Vec<usize> = factors.iter().map(Vec::len).collect();
        Shape::new(field, &dims)?;
        if let Some(&x) = factors.iter().flatten().find(|&&x| x as usize >= field.q()) {
            return Err(Error::Invalid(format!(
                "{x} is not an element of {field:?}"
            )));
        }
        Ok(Tensor::from_parts(field, &dims, kron(field, factors)))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn shape(&self) -> Shape {
        Shape {
            field: self.field.clone(),
            dims: self.dims.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u8> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    fn offset(&self, idx: &[usize]) -> Result<usize> {
        if idx.len() != self.dims.len() || idx.iter().zip(&self.dims).any(|(&j, &n)| j >= n) {
            return Err(Error::Invalid(format!(
                "index {idx:?} out of range for dims {:?}",
                self.dims
            )));
        }
        Ok(idx
            .iter()
            .zip(strides(&self.dims))
            .map(|(j, s)| j * s)
            .sum())
    }

    pub fn get(&self, idx: &[usize]) -> Result<u8> {
        Ok(self.entries[self.offset(idx)?])
    }

    fn check_same(&self, other: &Tensor) -> Result<()> {
        if self.field != other.field || self.dims != other.dims {
            return Err(Error::Shape(format!(
                "dims {:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same(other)?;
        let e = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Tensor::from_parts(&self.field, &self.dims, e))
    }

    pub fn scale(&self, c: u8) -> Tensor {
        Tensor::from_parts(
            &self.field,
            &self.dims,
            linalg::scale(&self.field, c, &self.entries),
        )
    }

    /// The symmetric bilinear form `X * Y = Σ X_j Y_j`.
    pub fn star(&self, other: &Tensor) -> Result<u8> {
        self.check_same(other)?;
        Ok(linalg::dot(&self.field, &self.entries, &other.entries))
    }

    /// The mode-`i` fiber selected by `s`.
    ///
    /// `s` lists the fixed indices cyclically after mode `i`: `s[0]` indexes mode
    /// `i+1`, `s[1]` mode `i+2`, …, `s[r-2]` mode `i-1` (all modulo `r`).
    pub fn fiber(&self, i: usize, s: &[usize]) -> Result<Vec<u8>> {
        let r = self.order();
        if i >= r || s.len() != r - 1 {
            return Err(Error::Invalid(format!(
                "mode {i} with {} fixed indices for order {r}",
                s.len()
            )));
        }
        let mut idx = vec![0; r];
        for (k, &sk) in s.iter().enumerate() {
            idx[(i + 1 + k) % r] = sk;
        }
        (0..self.dims[i])
            .map(|t| {
                idx[i] = t;
                self.get(&idx)
            })
            .collect()
    }

    /// All mode-`i` fibers, ordered by the remaining indices in natural order.
    pub fn fibers(&self, i: usize) -> Result<Vec<Vec<u8>>> {
        let fl = self.flattening(i)?;
        let cols = fl.first().map_or(0, Vec::len);
        Ok((0..cols)
            .map(|c| fl.iter().map(|row| row[c]).collect())
            .collect())
    }

    /// The `n_i × (n/n_i)` matrix whose columns are the mode-`i` fibers.
    pub fn flattening(&self, i: usize) -> Result<Vec<Vec<u8>>> {
        if i >= self.order() {
            return Err(Error::Invalid(format!(
                "mode {i} out of range for order {}",
                self.order()
            )));
        }
        Ok(flatten_mode(&self.dims, &self.entries, i))
    }

    pub fn flattening_rank(&self, i: usize) -> Result<usize> {
        Ok(linalg::rank(&self.field, &self.flattening(i)?))
    }

    /// The slice `Σ_s = (X[t1, t2, s])` of a 3-tensor, as an `n_1 × n_2` matrix.
    pub fn slice3(&self, s: usize) -> Result<Vec<Vec<u8>>> {
        if self.order() != 3 {
            return Err(Error::Shape(format!(
                "slices need a 3-tensor, got order {}",
                self.order()
            )));
        }
        if s >= self.dims[2] {
            return Err(Error::Invalid(format!("slice {s} out of range")));
        }
        let (n1, n2, n3) = (self.dims[0], self.dims[1], self.dims[2]);
        Ok((0..n1)
            .map(|a| {
                (0..n2)
                    .map(|b| self.entries[(a * n2 + b) * n3 + s])
                    .collect()
            })
            .collect())
    }

    /// Component `i` is the span of the mode-`i` fibers.
    pub fn closure(&self) -> Vec<Subspace> {
        (0..self.order())
            .map(|i| {
                let fibers = self.fibers(i).expect("mode in range");
                Subspace::span_unchecked(&self.field, self.dims[i], fibers)
            })
            .collect()
    }

    /// Reorders modes: mode `t` of the result is mode `perm[t]` of `self`.
    pub fn permute_modes(&self, perm: &[usize]) -> Result<Tensor> {
        let r = self.order();
        let mut seen = vec![false; r];
        if perm.len() != r
            || perm
                .iter()
                .any(|&p| p >= r || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Invalid(format!(
                "{perm:?} is not a permutation of {r} modes"
            )));
        }
        let dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let src = strides(&self.dims);
        let n = self.entries.len();
        let dst = strides(&dims);
        let mut out = vec![0u8; n];
        for (off, o) in out.iter_mut().enumerate() {
            let src_off: usize = (0..r)
                .map(|t| ((off / dst[t]) % dims[t]) * src[perm[t]])
                .sum();
            *o = self.entries[src_off];
        }
        Ok(Tensor::from_parts(&self.field, &dims, out))
    }

    /// Applies a linear map to mode `i`; `m` is `n_i × n_i` acting on fibers.
    pub fn apply_mode_map(&self, i: usize, m: &[Vec<u8>]) -> Result<Tensor> {
        if i >= self.order() || m.len() != self.dims[i] || m.iter().any(|r| r.len() != self.dims[i])
        {
            return Err(Error::Shape("mode map has the wrong size".into()));
        }
        let st = strides(&self.dims);
        let ni = self.dims[i];
        let mut out = vec![0u8; self.entries.len()];
        for off in 0..self.entries.len() {
            let t = (off / st[i]) % ni;
            let base = off - t * st[i];
            let v = (0..ni).fold(0u8, |acc, u| {
                self.field
                    .add(acc, self.field.mul(m[t][u], self.entries[base + u * st[i]]))
            });
            out[off] = v;
        }
        Ok(Tensor::from_parts(&self.field, &self.dims, out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn simple_tensor_entries() {
        let f = Field::prime(2).unwrap();
        let t = Tensor::simple(&f, &[vec![1, 0], vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(t.entries().iter().filter(|&&x| x != 0).count(), 1);
        assert_eq!(t.get(&[0, 0, 0]).unwrap(), 1);
        let z = Tensor::simple(&f, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert!(z.is_zero());
        assert!(Tensor::simple(&f, &[vec![1, 1]]).is_err());
    }

    #[test]
    fn layout_is_last_index_fastest() {
        let f = f3();
        let t = Tensor::new(&f, &[2, 3], vec![0, 1, 2, 0, 0, 1]).unwrap();
        assert_eq!(t.get(&[0, 2]).unwrap(), 2);
        assert_eq!(t.get(&[1, 2]).unwrap(), 1);
        assert!(t.get(&[2, 0]).is_err());
    }

    #[test]
    fn star_on_simple_tensors() {
        let f = Field::prime(2).unwrap();
        let x = Tensor::simple(&f, &[vec![1, 1], vec![1, 0]]).unwrap();
        let y = Tensor::simple(&f, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(x.star(&y).unwrap(), 0);
        let e = Tensor::simple(&f, &[vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(e.star(&e).unwrap(), 1);
        assert_eq!(x.star(&Tensor::zeros(&x.shape())).unwrap(), 0);
    }

    #[test]
    fn fibers_follow_cyclic_convention() {
        let f = f3();
        let x = Tensor::new(&f, &[2, 3, 4], (0..24).map(|v| (v % 3) as u8).collect()).unwrap();
        // mode 1 (0-based): s[0] indexes mode 2, s[1] indexes mode 0
        let fib = x.fiber(1, &[3, 1]).unwrap();
        let expect: Vec<u8> = (0..3).map(|t| x.get(&[1, t, 3]).unwrap()).collect();
        assert_eq!(fib, expect);
        let fib = x.fiber(0, &[2, 1]).unwrap();
        let expect: Vec<u8> = (0..2).map(|t| x.get(&[t, 2, 1]).unwrap()).collect();
        assert_eq!(fib, expect);
        assert!(x.fiber(3, &[0, 0]).is_err());
    }

    #[test]
    fn slices_of_simple_tensor() {
        let f = f3();
        let (u, v, w) = (vec![1, 2], vec![0, 1, 1], vec![2, 1]);
        let t = Tensor::simple(&f, &[u.clone(), v.clone(), w.clone()]).unwrap();
        for s in 0..2 {
            let sl = t.slice3(s).unwrap();
            for a in 0..2 {
                for b in 0..3 {
                    assert_eq!(sl[a][b], f.mul(w[s], f.mul(u[a], v[b])));
                }
            }
        }
        assert!(Tensor::new(&f, &[2, 2], vec![0; 4])
            .unwrap()
            .slice3(0)
            .is_err());
    }

    #[test]
    fn closure_dims_are_flattening_ranks() {
        let f = f3();
        let x = Tensor::new(&f, &[2, 2, 3], vec![1, 0, 2, 0, 1, 1, 2, 2, 0, 0, 0, 1]).unwrap();
        let cl = x.closure();
        for i in 0..3 {
            assert_eq!(cl[i].dim(), x.flattening_rank(i).unwrap());
        }
        let z = Tensor::zeros(&x.shape());
        assert!(z.closure().iter().all(Subspace::is_zero));
    }

    #[test]
    fn permutation_moves_indices() {
        let f = f3();
        let x = Tensor::new(&f, &[2, 3, 4], (0..24).map(|v| (v * 7 % 3) as u8).collect()).unwrap();
        let y = x.permute_modes(&[2, 0, 1]).unwrap();
        assert_eq!(y.dims(), &[4, 2, 3]);
        assert_eq!(y.get(&[3, 1, 2]).unwrap(), x.get(&[1, 2, 3]).unwrap());
    }
}
