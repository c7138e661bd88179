use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Möbius values `μ(x, y)`; zero for incomparable pairs. Values are integers.
#[derive(Debug, Clone)]
pub struct MobiusTable {
    values: Vec<Vec<BigInt>>,
}

impl MobiusTable {
    pub fn get(&self, x: usize, y: usize) -> &BigInt {
        &self.values[x][y]
    }
}

/// A finite poset with a validated order relation and a lazily built Möbius table.
#[derive(Debug)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    // leq[i] is the bitset of j with i <= j
    up: Vec<Vec<u64>>,
    // a linear extension of the order
    order: Vec<usize>,
    mobius: OnceLock<MobiusTable>,
}

fn bit(set: &[u64], j: usize) -> bool {
    set[j / 64] >> (j % 64) & 1 == 1
}

impl<T> FinitePoset<T> {
    pub fn new(elements: Vec<T>, leq: impl Fn(&T, &T) -> bool) -> Result<Self> {
        let n = elements.len();
        let words = n.div_ceil(64).max(1);
        let mut up = vec![vec![0u64; words]; n];
        for i in 0..n {
            for j in 0..n {
                if leq(&elements[i], &elements[j]) {
                    up[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        Self::from_bitsets(elements, up)
    }

    pub fn from_matrix(elements: Vec<T>, leq: &[Vec<bool>]) -> Result<Self> {
        Self::new_indexed(elements, |i, j| leq[i][j])
    }

    fn new_indexed(elements: Vec<T>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = elements.len();
        let words = n.div_ceil(64).max(1);
        let mut up = vec![vec![0u64; words]; n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
        }
        Self::from_bitsets(elements, up)
    }

    fn from_bitsets(elements: Vec<T>, up: Vec<Vec<u64>>) -> Result<Self> {
        let n = elements.len();
        for i in 0..n {
            if !bit(&up[i], i) {
                return Err(Error::NotPoset(format!("element {i} is not <= itself")));
            }
            for j in 0..n {
                if i != j && bit(&up[i], j) {
                    if bit(&up[j], i) {
                        return Err(Error::NotPoset(format!(
                            "elements {i} and {j} violate antisymmetry"
                        )));
                    }
                    // transitivity: everything above j is above i
                    if up[j].iter().zip(&up[i]).any(|(a, b)| a & !b != 0) {
                        return Err(Error::NotPoset(format!(
                            "transitivity fails through {i} <= {j}"
                        )));
                    }
                }
            }
        }
        let mut below = vec![0usize; n];
        for row in &up {
            for (j, b) in below.iter_mut().enumerate() {
                if bit(row, j) {
                    *b += 1;
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| below[j]);
        Ok(FinitePoset {
            elements,
            up,
            order,
            mobius: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        bit(&self.up[i], j)
    }

    pub fn mobius_table(&self) -> &MobiusTable {
        self.mobius.get_or_init(|| {
            let n = self.len();
            let mut values = vec![vec![BigInt::zero(); n]; n];
            for x in 0..n {
                values[x][x] = BigInt::one();
                let above: Vec<usize> = self
                    .order
                    .iter()
                    .copied()
                    .filter(|&y| y != x && self.leq(x, y))
                    .collect();
                for (pos, &y) in above.iter().enumerate() {
                    let mut s = values[x][x].clone();
                    for &z in &above[..pos] {
                        if self.leq(z, y) {
                            s += &values[x][z];
                        }
                    }
                    values[x][y] = -s;
                }
            }
            MobiusTable { values }
        })
    }

    pub fn mobius(&self, x: usize, y: usize) -> &BigInt {
        self.mobius_table().get(x, y)
    }

    /// Returns `f` with `g(y) = Σ_{x <= y} f(x)`.
    pub fn invert(&self, g: &[BigRational]) -> Result<Vec<BigRational>> {
        self.check_len(g.len())?;
        let mu = self.mobius_table();
        Ok((0..self.len())
            .map(|y| {
                (0..self.len())
                    .filter(|&x| self.leq(x, y))
                    .fold(BigRational::zero(), |acc, x| {
                        acc + &g[x] * BigRational::from_integer(mu.get(x, y).clone())
                    })
            })
            .collect())
    }

    /// Returns `g(y) = Σ_{x <= y} f(x)`.
    pub fn accumulate(&self, f: &[BigRational]) -> Result<Vec<BigRational>> {
        self.check_len(f.len())?;
        Ok((0..self.len())
            .map(|y| {
                (0..self.len())
                    .filter(|&x| self.leq(x, y))
                    .fold(BigRational::zero(), |acc, x| acc + &f[x])
            })
            .collect())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::Invalid(format!(
                "expected {} values, got {len}",
                self.len()
            )));
        }
        Ok(())
    }
}

impl<T: Clone> FinitePoset<T> {
    /// The product order on pairs.
    pub fn product<U: Clone>(&self, other: &FinitePoset<U>) -> FinitePoset<(T, U)> {
        let m = other.len();
        let elements: Vec<(T, U)> = self
            .elements
            .iter()
            .flat_map(|a| other.elements.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        FinitePoset::new_indexed(elements, |i, j| {
            self.leq(i / m, j / m) && other.leq(i % m, j % m)
        })
        .expect("product of posets is a poset")
    }
}
