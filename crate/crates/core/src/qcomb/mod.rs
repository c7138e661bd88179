//! Gaussian binomials, Möbius functions of finite posets and Möbius inversion.

mod poset;

pub use poset::{FinitePoset, MobiusTable};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, m)` with `q = p^m`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        return Some((q, 1));
    }
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn check_q(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

/// `q^e` for a possibly negative exponent.
pub fn qpow(q: u64, e: i64) -> BigRational {
    let base = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

/// Number of `b`-dimensional subspaces of `GF(q)^a`, for `a, b >= 0`.
///
/// No validation of `q`; callers inside the crate pass field orders.
pub fn gaussian(q: u64, a: usize, b: usize) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= q.pow((a - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// The q-binomial coefficient with the four-case extension to negative `a`.
///
/// For `b = 0` and `a < 0` the negative-`a` rule is applied with `b = 0`, which
/// gives 1 (the empty product).
pub fn qbinom(q: u64, a: i64, b: i64) -> Result<BigRational> {
    check_q(q)?;
    Ok(qbinom_unchecked(q, a, b))
}

pub(crate) fn qbinom_unchecked(q: u64, a: i64, b: i64) -> BigRational {
    if b < 0 || (0 <= a && a < b) {
        return BigRational::zero();
    }
    if a >= 0 {
        return BigRational::from_integer(gaussian(q, a as usize, b as usize));
    }
    let sign = if b % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    let inner = gaussian(q, (-a + b - 1) as usize, b as usize);
    sign * qpow(q, a * b - b * (b - 1) / 2) * BigRational::from_integer(inner)
}

/// Möbius function of the subspace lattice between comparable subspaces of
/// dimensions `a <= b`: `(-1)^(b-a) q^C(b-a, 2)`.
pub fn subspace_mobius(q: u64, a: i64, b: i64) -> Result<BigRational> {
    check_q(q)?;
    if a < 0 || a > b {
        return Err(Error::Invalid(format!(
            "subspace_mobius needs 0 <= a <= b, got ({a}, {b})"
        )));
    }
    let k = b - a;
    let v = BigInt::from(q).pow((k * (k - 1) / 2) as u32);
    Ok(BigRational::from_integer(if k % 2 == 0 { v } else { -v }))
}

/// True when `x` is a non-negative integer.
pub fn is_natural(x: &BigRational) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn qbinom_cases() {
        assert_eq!(qbinom(2, 2, 1).unwrap(), r(3));
        assert_eq!(qbinom(3, 5, 0).unwrap(), r(1));
        assert_eq!(qbinom(2, 1, 2).unwrap(), r(0));
        assert_eq!(qbinom(2, 3, -1).unwrap(), r(0));
        assert_eq!(qbinom(3, 3, 2).unwrap(), r(13));
        assert_eq!(qbinom(6, 3, 2), Err(Error::NotPrimePower(6)));
    }

    #[test]
    fn qbinom_negative_upper() {
        // [-1, 1]_q = -q^{-1}
        assert_eq!(
            qbinom(2, -1, 1).unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        // b = 0 with a < 0 follows the same rule and gives 1
        assert_eq!(qbinom(3, -4, 0).unwrap(), r(1));
    }

    #[test]
    fn negative_upper_matches_product_formula() {
        // prod_{i<b} (q^{a-i} - 1)/(q^{i+1} - 1) is a polynomial identity in q^a
        for q in [2u64, 3] {
            for a in -5i64..0 {
                for b in 1i64..4 {
                    let mut prod = BigRational::one();
                    for i in 0..b {
                        prod *= (qpow(q, a - i) - r(1)) / (qpow(q, i + 1) - r(1));
                    }
                    assert_eq!(qbinom(q, a, b).unwrap(), prod, "q={q} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn subspace_mobius_values() {
        assert_eq!(subspace_mobius(2, 0, 0).unwrap(), r(1));
        assert_eq!(subspace_mobius(2, 1, 2).unwrap(), r(-1));
        assert_eq!(subspace_mobius(2, 0, 2).unwrap(), r(2));
        assert_eq!(subspace_mobius(3, 0, 3).unwrap(), r(-27));
        assert!(subspace_mobius(2, 2, 1).is_err());
    }

    #[test]
    fn gaussian_symmetry() {
        for a in 0..8 {
            for b in 0..=a {
                assert_eq!(gaussian(3, a, b), gaussian(3, a, a - b));
            }
        }
    }
}
