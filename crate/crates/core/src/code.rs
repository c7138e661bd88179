//! Tensor codes: subspaces of the ambient tensor space, stored canonically.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gfq::Field;
use crate::linalg::{self, ProjectivePoints};
use crate::subspace::{enumerate_subspaces, Subspace};
use crate::tensor::{tensor_rank, tensor_rank_at_most, Shape, Tensor};

/// A `k`-dimensional subspace of `GF(q)^{n_1} ⊗ … ⊗ GF(q)^{n_r}`. The basis is
/// the reduced echelon form of the flattened generators, so equal codes have
/// equal bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorCode {
    shape: Shape,
    space: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParameters {
    pub dims: Vec<usize>,
    pub k: usize,
    pub d: Option<usize>,
    pub maxrk: Option<usize>,
    pub trk: usize,
}

impl TensorCode {
    pub fn from_basis(tensors: &[Tensor]) -> Result<TensorCode> {
        let first = tensors
            .first()
            .ok_or_else(|| Error::Invalid("a code needs at least one generator".into()))?;
        let shape = first.shape();
        if let Some(t) = tensors.iter().find(|t| t.shape() != shape) {
            return Err(Error::Shape(format!(
                "generator dims {:?} vs {:?}",
                t.dims(),
                shape.dims()
            )));
        }
        let rows: Vec<Vec<u8>> = tensors.iter().map(|t| t.entries().to_vec()).collect();
        Ok(TensorCode {
            space: Subspace::span_unchecked(shape.field(), shape.n(), rows),
            shape,
        })
    }

    /// The code spanned by flat tensors; an empty list gives the zero code.
    pub fn from_rows(shape: &Shape, rows: &[Vec<u8>]) -> Result<TensorCode> {
        Ok(TensorCode {
            space: Subspace::span(shape.field(), shape.n(), rows)?,
            shape: shape.clone(),
        })
    }

    pub fn from_subspace(shape: &Shape, space: Subspace) -> Result<TensorCode> {
        if space.field() != shape.field() || space.ambient_dim() != shape.n() {
            return Err(Error::Shape(
                "subspace does not live in this tensor space".into(),
            ));
        }
        Ok(TensorCode {
            shape: shape.clone(),
            space,
        })
    }

    pub fn zero(shape: &Shape) -> TensorCode {
        TensorCode {
            space: Subspace::zero(shape.field(), shape.n()),
            shape: shape.clone(),
        }
    }

    pub fn full(shape: &Shape) -> TensorCode {
        TensorCode {
            space: Subspace::full(shape.field(), shape.n()),
            shape: shape.clone(),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn field(&self) -> &Field {
        self.shape.field()
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn k(&self) -> usize {
        self.space.dim()
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> Vec<Tensor> {
        self.space
            .basis()
            .iter()
            .map(|r| Tensor::from_parts(self.field(), self.dims(), r.clone()))
            .collect()
    }

    pub fn contains(&self, x: &Tensor) -> Result<bool> {
        if x.shape() != self.shape {
            return Err(Error::Shape(format!(
                "tensor dims {:?} vs code dims {:?}",
                x.dims(),
                self.dims()
            )));
        }
        Ok(self.space.contains_vector(x.entries()))
    }

    pub fn is_subcode_of(&self, other: &TensorCode) -> Result<bool> {
        other.space.contains(&self.space)
    }

    /// `C^⊥ = {Y : X * Y = 0 for all X ∈ C}`.
    pub fn dual(&self) -> TensorCode {
        TensorCode {
            shape: self.shape.clone(),
            space: self.space.orthogonal_complement(),
        }
    }

    pub fn intersect(&self, other: &TensorCode) -> Result<TensorCode> {
        Ok(TensorCode {
            shape: self.shape.clone(),
            space: self.space.intersect(&other.space)?,
        })
    }

    pub fn sum(&self, other: &TensorCode) -> Result<TensorCode> {
        Ok(TensorCode {
            shape: self.shape.clone(),
            space: self.space.sum(&other.space)?,
        })
    }

    /// Component `i` is the span of the mode-`i` fibers of all codewords;
    /// fibers are linear, so the basis suffices.
    pub fn closure(&self) -> Vec<Subspace> {
        let f = self.field();
        (0..self.shape.order())
            .map(|i| {
                let fibers: Vec<Vec<u8>> = self
                    .basis()
                    .iter()
                    .flat_map(|t| t.fibers(i).expect("mode in range"))
                    .collect();
                Subspace::span_unchecked(f, self.dims()[i], fibers)
            })
            .collect()
    }

    pub fn closure_dim(&self) -> usize {
        if self.k() == 0 {
            return 0;
        }
        self.closure().iter().map(Subspace::dim).product()
    }

    /// The same code with every mode zero-padded to `dims`.
    pub fn pad(&self, dims: &[usize]) -> Result<TensorCode> {
        if dims.len() != self.dims().len() || dims.iter().zip(self.dims()).any(|(a, b)| a < b) {
            return Err(Error::Shape(format!(
                "cannot pad {:?} to {dims:?}",
                self.dims()
            )));
        }
        let shape = Shape::new(self.field(), dims)?;
        let old = crate::tensor::strides(self.dims());
        let new = crate::tensor::strides(dims);
        let rows: Vec<Vec<u8>> = self
            .space
            .basis()
            .iter()
            .map(|row| {
                let mut out = vec![0u8; shape.n()];
                for (off, &x) in row.iter().enumerate() {
                    let o: usize = (0..dims.len())
                        .map(|t| ((off / old[t]) % self.dims()[t]) * new[t])
                        .sum();
                    out[o] = x;
                }
                out
            })
            .collect();
        TensorCode::from_rows(&shape, &rows)
    }

    /// One representative per nonzero codeword up to scalars: the coefficient
    /// vector's first nonzero entry is 1.
    pub fn projective_codewords(&self) -> impl Iterator<Item = Tensor> + '_ {
        ProjectivePoints::new(self.field(), self.k()).map(move |c| {
            let e = linalg::combine(self.field(), &c, self.space.basis(), self.n());
            Tensor::from_parts(self.field(), self.dims(), e)
        })
    }

    pub fn projective_count(&self) -> u64 {
        ProjectivePoints::count(self.field().q(), self.k())
    }

    /// Every `j`-dimensional subcode, in the enumeration order of
    /// coefficient subspaces of `GF(q)^k`.
    pub fn subcodes(
        &self,
        j: usize,
        budget: &Budget,
    ) -> Result<impl Iterator<Item = TensorCode> + '_> {
        if j > self.k() {
            return Err(Error::Invalid(format!(
                "no {j}-dimensional subcodes of a {}-dimensional code",
                self.k()
            )));
        }
        Ok(
            enumerate_subspaces(self.field(), self.k(), j, budget)?.map(move |u| {
                let rows: Vec<Vec<u8>> = u
                    .basis()
                    .iter()
                    .map(|c| linalg::combine(self.field(), c, self.space.basis(), self.n()))
                    .collect();
                TensorCode {
                    shape: self.shape.clone(),
                    space: Subspace::span_unchecked(self.field(), self.n(), rows),
                }
            }),
        )
    }

    /// The `(r+1)`-tensor whose last-mode slices are the basis codewords.
    pub fn stacked(&self) -> Result<Tensor> {
        let k = self.k();
        if k == 0 {
            return Err(Error::Invalid("the zero code has no stacked tensor".into()));
        }
        let mut dims = self.dims().to_vec();
        dims.push(k);
        let mut e = vec![0u8; self.n() * k];
        for (l, row) in self.space.basis().iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                e[j * k + l] = x;
            }
        }
        Ok(Tensor::from_parts(self.field(), &dims, e))
    }

    /// `trk(C)`: the least dimension of a perfect space containing the code.
    pub fn tensor_rank(&self, budget: &Budget) -> Result<usize> {
        if self.k() == 0 {
            return Ok(0);
        }
        Ok(tensor_rank(&self.stacked()?, budget)?.0)
    }

    /// `trk(C)` if it is at most `cap`.
    pub fn tensor_rank_at_most(&self, cap: usize, budget: &Budget) -> Result<Option<usize>> {
        if self.k() == 0 {
            return Ok(Some(0));
        }
        Ok(tensor_rank_at_most(&self.stacked()?, cap, budget)?.map(|(r, _)| r))
    }

    /// Minimum rank of a nonzero codeword.
    pub fn min_distance(&self, budget: &Budget) -> Result<usize> {
        if self.k() == 0 {
            return Err(Error::Invalid(
                "the zero code has no minimum distance".into(),
            ));
        }
        budget.charge("codewords", self.projective_count())?;
        let mut best = usize::MAX;
        let mut open: Option<usize> = None;
        for x in self.projective_codewords() {
            if best == 1 {
                break;
            }
            match tensor_rank_at_most(&x, best - 1, budget) {
                Ok(Some((r, _))) => best = r,
                Ok(None) => {}
                Err(Error::Undecided { lower, .. }) => {
                    open = Some(open.map_or(lower, |o: usize| o.min(lower)))
                }
                Err(e) => return Err(e),
            }
        }
        match open {
            Some(lower) if lower < best => Err(Error::Undecided {
                what: "minimum distance",
                lower,
                upper: best,
            }),
            _ => Ok(best),
        }
    }

    /// Maximum rank of a codeword.
    pub fn max_rank(&self, budget: &Budget) -> Result<usize> {
        if self.k() == 0 {
            return Ok(0);
        }
        budget.charge("codewords", self.projective_count())?;
        let mut best = 0;
        for x in self.projective_codewords() {
            best = best.max(tensor_rank(&x, budget)?.0);
        }
        Ok(best)
    }

    pub fn parameters(&self, budget: &Budget) -> Result<CodeParameters> {
        let nonzero = self.k() > 0;
        Ok(CodeParameters {
            dims: self.dims().to_vec(),
            k: self.k(),
            d: if nonzero {
                Some(self.min_distance(budget)?)
            } else {
                None
            },
            maxrk: if nonzero {
                Some(self.max_rank(budget)?)
            } else {
                None
            },
            trk: self.tensor_rank(budget)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(p: u32, dims: &[usize]) -> Shape {
        Shape::new(&Field::prime(p).unwrap(), dims).unwrap()
    }

    #[test]
    fn duplicates_are_reduced() {
        let s = shape(3, &[2, 2]);
        let x = Tensor::new(s.field(), s.dims(), vec![1, 2, 0, 1]).unwrap();
        let c = TensorCode::from_basis(&[x.clone(), x.scale(2)]).unwrap();
        assert_eq!(c.k(), 1);
        assert!(TensorCode::from_basis(&[]).is_err());
    }

    #[test]
    fn dual_basics() {
        let s = shape(2, &[2, 2]);
        assert_eq!(TensorCode::full(&s).dual(), TensorCode::zero(&s));
        let x = Tensor::new(s.field(), s.dims(), vec![1, 0, 0, 1]).unwrap();
        let c = TensorCode::from_basis(&[x]).unwrap();
        let d = c.dual();
        assert_eq!(d.k(), 3);
        assert_eq!(d.dual(), c);
        for a in c.basis() {
            for b in d.basis() {
                assert_eq!(a.star(&b).unwrap(), 0);
            }
        }
    }

    #[test]
    fn distance_of_code_with_simple_tensor() {
        let s = shape(2, &[2, 2]);
        let e = Tensor::simple(s.field(), &[vec![1, 0], vec![1, 0]]).unwrap();
        let id = Tensor::new(s.field(), s.dims(), vec![1, 0, 0, 1]).unwrap();
        let c = TensorCode::from_basis(&[e, id]).unwrap();
        assert_eq!(c.min_distance(&Budget::default()).unwrap(), 1);
        assert_eq!(c.max_rank(&Budget::default()).unwrap(), 2);
    }

    #[test]
    fn trk_of_simple_span_and_single_tensor() {
        let s = shape(3, &[2, 2, 2]);
        let f = s.field();
        let gens = [
            Tensor::simple(f, &[vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap(),
            Tensor::simple(f, &[vec![0, 1], vec![1, 2], vec![1, 1]]).unwrap(),
            Tensor::simple(f, &[vec![1, 1], vec![0, 1], vec![1, 0]]).unwrap(),
        ];
        let c = TensorCode::from_basis(&gens).unwrap();
        assert_eq!(c.tensor_rank(&Budget::default()).unwrap(), 3);
        let x = gens[0].add(&gens[1]).unwrap();
        let one = TensorCode::from_basis(&[x]).unwrap();
        assert_eq!(one.tensor_rank(&Budget::default()).unwrap(), 2);
    }

    #[test]
    fn closure_survives_padding() {
        let s = shape(3, &[2, 2]);
        let x = Tensor::new(s.field(), s.dims(), vec![1, 2, 2, 1]).unwrap();
        let c = TensorCode::from_basis(&[x]).unwrap();
        let p = c.pad(&[3, 4]).unwrap();
        let a: Vec<usize> = c.closure().iter().map(Subspace::dim).collect();
        let b: Vec<usize> = p.closure().iter().map(Subspace::dim).collect();
        assert_eq!(a, b);
        assert_eq!(p.k(), 1);
    }

    #[test]
    fn subcode_counts() {
        let s = shape(2, &[2, 2]);
        let c = TensorCode::full(&s);
        assert_eq!(c.subcodes(1, &Budget::default()).unwrap().count(), 15);
        assert_eq!(c.subcodes(2, &Budget::default()).unwrap().count(), 35);
    }
}
