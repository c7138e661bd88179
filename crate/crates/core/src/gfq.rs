//! Arithmetic in GF(p^m) with a polynomial-basis representation.
//!
//! An element is stored as the integer `Σ c_i p^i` of its coefficient vector
//! `(c_0, …, c_{m-1})` modulo the defining polynomial, so prime-field elements
//! are their usual residues. Fields have fewer than 256 elements.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::qcomb::is_prime;

struct Inner {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    prime_subfield: OnceLock<Field>,
}

/// A finite field; cheap to clone, compared by `(p, m, modulus)`.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}; {:?})", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // modulus is monic
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            for (t, &mc) in modulus.iter().enumerate() {
                let k = d - m + t;
                prod[k] = (prod[k] + p * p - c * mc % p) % p;
            }
        }
    }
    prod.truncate(m);
    prod
}

fn poly_rem_is_zero(a: &[u32], b: &[u32], p: u32) -> bool {
    // b monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (t, &bc) in b.iter().enumerate() {
                r[shift + t] = (r[shift + t] + p * p - c * bc % p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        // all monic polynomials of degree d
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                f.push((x % p as usize) as u32);
                x /= p as usize;
            }
            f.push(1);
            if poly_rem_is_zero(modulus, &f, p) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// GF(p^m) defined by `modulus` (coefficients `c_0..c_m`, `c_m = 1`).
    pub fn new(p: u32, m: u32, modulus: Vec<u32>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::BadModulus { expected: m });
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q < 256)
            .ok_or(Error::FieldTooLarge(p as u64))?;
        if modulus.len() != m as usize + 1
            || modulus[m as usize] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(Error::BadModulus { expected: m });
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        let q = q as usize;
        let coeffs = |v: usize| -> Vec<u32> {
            let mut x = v;
            (0..m)
                .map(|_| {
                    let c = (x % p as usize) as u32;
                    x /= p as usize;
                    c
                })
                .collect()
        };
        let encode = |c: &[u32]| -> u8 {
            c.iter()
                .rev()
                .fold(0usize, |acc, &x| acc * p as usize + x as usize) as u8
        };
        let all: Vec<Vec<u32>> = (0..q).map(coeffs).collect();
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = all[a]
                    .iter()
                    .zip(&all[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = encode(&s);
                mul[a * q + b] = encode(&poly_mulmod(&all[a], &all[b], &modulus, p));
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        Ok(Field(Arc::new(Inner {
            p,
            m,
            modulus,
            q,
            add,
            mul,
            neg,
            inv,
            prime_subfield: OnceLock::new(),
        })))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, vec![0, 1])
    }

    /// GF(4) defined by x² + x + 1.
    pub fn gf4() -> Field {
        Field::new(2, 2, vec![1, 1, 1]).expect("x^2+x+1 is irreducible")
    }

    /// GF(8) defined by x³ + x + 1.
    pub fn gf8() -> Field {
        Field::new(2, 3, vec![1, 1, 0, 1]).expect("x^3+x+1 is irreducible")
    }

    /// GF(p^m) defined by the first monic irreducible polynomial in
    /// lexicographic coefficient order.
    pub fn with_order(p: u32, m: u32) -> Result<Field> {
        if m == 1 {
            return Field::prime(p);
        }
        let count = (p as u64)
            .checked_pow(m)
            .filter(|&q| q < 256)
            .ok_or(Error::FieldTooLarge(p as u64))?;
        for idx in 0..count {
            let mut x = idx;
            let mut modulus: Vec<u32> = (0..m)
                .map(|_| {
                    let c = (x % p as u64) as u32;
                    x /= p as u64;
                    c
                })
                .collect();
            modulus.push(1);
            if modulus[0] != 0 && is_irreducible(&modulus, p) {
                return Field::new(p, m, modulus);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> usize {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.0.add[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.0.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.0.mul[a as usize * self.0.q + b as usize]
    }

    /// Inverse of a nonzero element; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.0.inv[a as usize]
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let (mut base, mut acc) = (a, 1u8);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The absolute trace `Σ_{i<m} a^{p^i}`, a value of the prime subfield.
    pub fn trace_raw(&self, a: u8) -> u8 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.0.m {
            acc = self.add(acc, x);
            x = self.pow(x, self.0.p as u64);
        }
        acc
    }

    /// Polynomial coefficients `c_0..c_{m-1}` of an element.
    pub fn coeffs(&self, a: u8) -> Vec<u32> {
        let p = self.0.p as usize;
        let mut x = a as usize;
        (0..self.0.m)
            .map(|_| {
                let c = (x % p) as u32;
                x /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<u8> {
        if c.len() > self.0.m as usize || c.iter().any(|&x| x >= self.0.p) {
            return Err(Error::Invalid(format!(
                "{c:?} is not a reduced coefficient vector for {self:?}"
            )));
        }
        Ok(c.iter()
            .rev()
            .fold(0usize, |acc, &x| acc * self.0.p as usize + x as usize) as u8)
    }

    /// Checks that `v` encodes an element of this field.
    pub fn check(&self, v: u64) -> Result<u8> {
        if (v as usize) < self.0.q {
            Ok(v as u8)
        } else {
            Err(Error::Invalid(format!("{v} is not an element of {self:?}")))
        }
    }

    pub fn elem(&self, v: u8) -> FieldElement {
        assert!((v as usize) < self.0.q, "{v} out of range for {self:?}");
        FieldElement {
            field: self.clone(),
            value: v,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// The class of `x`, i.e. the element with coefficient vector `(0, 1, 0, …)`.
    pub fn generator(&self) -> FieldElement {
        if self.0.m == 1 {
            // no canonical polynomial generator; use a primitive root
            let q = self.0.q;
            let v = (1..q as u8)
                .find(|&g| (1..q as u64 - 1).all(|e| self.pow(g, e) != 1))
                .unwrap_or(1);
            return self.elem(v);
        }
        self.elem(self.0.p as u8)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |v| self.elem(v as u8))
    }

    pub fn prime_subfield(&self) -> &Field {
        self.0.prime_subfield.get_or_init(|| {
            if self.0.m == 1 {
                self.clone()
            } else {
                Field::prime(self.0.p).expect("p is prime")
            }
        })
    }
}

/// An element together with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: u8,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u8 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn same(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.field.elem(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.field.elem(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.field.elem(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.field.elem(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.field.elem(self.field.inv(self.value)))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.elem(self.field.pow(self.value, e))
    }

    /// The absolute trace, as an element of the prime subfield.
    pub fn trace(&self) -> FieldElement {
        self.field
            .prime_subfield()
            .elem(self.field.trace_raw(self.value))
    }
}

fn check_basis_field(b: &[FieldElement]) -> Result<Field> {
    let field = b
        .first()
        .map(|x| x.field.clone())
        .ok_or(Error::DependentBasis)?;
    if b.iter().any(|x| x.field != field) {
        return Err(Error::MixedFields);
    }
    if b.len() != field.m() as usize {
        return Err(Error::DependentBasis);
    }
    Ok(field)
}

/// Solves `x = Σ c_i b_i` over GF(p), returning `c`.
pub fn expand_over_base(x: &FieldElement, b: &[FieldElement]) -> Result<Vec<u8>> {
    let field = check_basis_field(b)?;
    if x.field != field {
        return Err(Error::MixedFields);
    }
    let base = field.prime_subfield().clone();
    let m = field.m() as usize;
    // columns are the coefficient vectors of b_i; augmented with x
    let mut rows: Vec<Vec<u8>> = (0..m)
        .map(|r| {
            let mut row: Vec<u8> = b.iter().map(|bi| bi.coeffs()[r] as u8).collect();
            row.push(x.coeffs()[r] as u8);
            row
        })
        .collect();
    let pivots = crate::linalg::rref_in_place(&base, &mut rows);
    if pivots.len() != m || pivots.contains(&m) {
        return Err(Error::DependentBasis);
    }
    Ok(rows.iter().map(|r| r[m]).collect())
}

/// The trace-dual basis: `tr(b_i · d_j) = δ_ij`.
pub fn dual_basis(b: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let field = check_basis_field(b)?;
    let base = field.prime_subfield().clone();
    let m = b.len();
    // Gram matrix T_ij = tr(b_i b_j); the dual basis is d_j = Σ_k (T^{-1})_{kj} b_k
    let gram: Vec<Vec<u8>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| field.trace_raw(field.mul(b[i].value, b[j].value)))
                .collect()
        })
        .collect();
    let inv = crate::linalg::invert(&base, &gram).ok_or(Error::DependentBasis)?;
    Ok((0..m)
        .map(|j| {
            let v = (0..m).fold(0u8, |acc, k| {
                field.add(acc, field.mul(inv[k][j], b[k].value))
            });
            field.elem(v)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_products() {
        let f = Field::gf4();
        let a = f.generator();
        assert_eq!(a.mul(&a.pow(2)).unwrap(), f.one());
        assert_eq!(a.pow(2), a.add(&f.one()).unwrap());
    }

    #[test]
    fn gf8_cube() {
        let f = Field::gf8();
        let a = f.generator();
        assert_eq!(a.pow(3), a.add(&f.one()).unwrap());
    }

    #[test]
    fn rejects_bad_fields() {
        assert_eq!(Field::prime(4).err(), Some(Error::NotPrime(4)));
        assert_eq!(
            Field::new(2, 2, vec![1, 0, 1]).err(),
            Some(Error::ReducibleModulus(2))
        );
        assert!(Field::new(2, 2, vec![1, 1]).is_err());
        assert!(Field::new(2, 9, vec![1; 10]).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Field::gf4().one();
        let b = Field::prime(2).unwrap().one();
        assert_eq!(a.add(&b), Err(Error::MixedFields));
        assert_eq!(Field::gf4().zero().inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn traces() {
        let f4 = Field::gf4();
        assert_eq!(f4.zero().trace().value(), 0);
        assert_eq!(f4.generator().trace().value(), 1);
        assert_eq!(Field::gf8().one().trace().value(), 1);
    }

    #[test]
    fn dual_bases_from_examples() {
        let f = Field::gf4();
        let a = f.generator();
        let d = dual_basis(&[f.one(), a.clone()]).unwrap();
        assert_eq!(d, vec![a.pow(2), f.one()]);
        assert_eq!(dual_basis(&d).unwrap(), vec![f.one(), a]);

        let f = Field::gf8();
        let a = f.generator();
        let d = dual_basis(&[f.one(), a.clone(), a.pow(2)]).unwrap();
        assert_eq!(d, vec![f.one(), a.pow(2), a]);
    }

    #[test]
    fn dependent_basis_rejected() {
        let f = Field::gf4();
        assert_eq!(dual_basis(&[f.one(), f.one()]), Err(Error::DependentBasis));
        assert_eq!(
            expand_over_base(&f.one(), &[f.one(), f.one()]),
            Err(Error::DependentBasis)
        );
    }

    #[test]
    fn expansion() {
        let f = Field::gf4();
        let a = f.generator();
        let b = [f.one(), a.clone()];
        assert_eq!(expand_over_base(&f.zero(), &b).unwrap(), vec![0, 0]);
        assert_eq!(expand_over_base(&a.pow(2), &b).unwrap(), vec![1, 1]);
    }

    #[test]
    fn with_order_finds_fields() {
        for (p, m) in [(2, 4), (3, 2), (3, 3), (5, 2)] {
            let f = Field::with_order(p, m).unwrap();
            assert_eq!(f.q(), (p as usize).pow(m));
        }
    }
}
