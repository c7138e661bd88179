//! Dense row operations over a `Field`, on rows of raw element values.

use crate::gfq::Field;

/// Brings `rows` to reduced row-echelon form, drops zero rows and returns the
/// pivot columns.
pub fn rref_in_place(field: &Field, rows: &mut Vec<Vec<u8>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]);
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let f = row[c];
            if i != r && f != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if y != 0 {
                        *x = field.sub(*x, field.mul(f, y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Canonical reduced echelon form and rank.
pub fn rref(field: &Field, rows: &[Vec<u8>]) -> (Vec<Vec<u8>>, usize) {
    let mut m = rows.to_vec();
    let p = rref_in_place(field, &mut m);
    (m, p.len())
}

pub fn rank(field: &Field, rows: &[Vec<u8>]) -> usize {
    rref(field, rows).1
}

/// Reduces `v` against an echelon basis; afterwards `v` is zero iff it was in the span.
pub fn reduce(field: &Field, basis: &[Vec<u8>], pivots: &[usize], v: &mut [u8]) {
    for (row, &c) in basis.iter().zip(pivots) {
        let f = v[c];
        if f != 0 {
            for (x, &y) in v.iter_mut().zip(row).skip(c) {
                if y != 0 {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
    }
}

pub fn in_span(field: &Field, basis: &[Vec<u8>], pivots: &[usize], v: &[u8]) -> bool {
    let mut w = v.to_vec();
    reduce(field, basis, pivots, &mut w);
    w.iter().all(|&x| x == 0)
}

/// Coordinates of `v` in an echelon basis, if `v` lies in its span.
pub fn coordinates(
    field: &Field,
    basis: &[Vec<u8>],
    pivots: &[usize],
    v: &[u8],
) -> Option<Vec<u8>> {
    let coords: Vec<u8> = pivots.iter().map(|&c| v[c]).collect();
    let mut w = v.to_vec();
    for (row, &a) in basis.iter().zip(&coords) {
        if a != 0 {
            for (x, &y) in w.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(a, y));
            }
        }
    }
    w.iter().all(|&x| x == 0).then_some(coords)
}

/// Basis of `{x : M x = 0}` for an echelon `M` with `n` columns.
pub fn nullspace(field: &Field, basis: &[Vec<u8>], pivots: &[usize], n: usize) -> Vec<Vec<u8>> {
    let mut is_pivot = vec![false; n];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0u8; n];
            v[f] = 1;
            for (row, &c) in basis.iter().zip(pivots) {
                v[c] = field.neg(row[f]);
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, if it is invertible.
pub fn invert(field: &Field, m: &[Vec<u8>]) -> Option<Vec<Vec<u8>>> {
    let n = m.len();
    let mut aug: Vec<Vec<u8>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u8::from(i == j)));
            r
        })
        .collect();
    let pivots = rref_in_place(field, &mut aug);
    if pivots.len() != n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `Σ_i c_i rows_i`.
pub fn combine(field: &Field, coeffs: &[u8], rows: &[Vec<u8>], len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for (&c, row) in coeffs.iter().zip(rows) {
        if c != 0 {
            for (x, &y) in out.iter_mut().zip(row) {
                *x = field.add(*x, field.mul(c, y));
            }
        }
    }
    out
}

pub fn dot(field: &Field, a: &[u8], b: &[u8]) -> u8 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

pub fn scale(field: &Field, c: u8, v: &[u8]) -> Vec<u8> {
    v.iter().map(|&x| field.mul(c, x)).collect()
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn normalize(field: &Field, v: &mut [u8]) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        if lead != 1 {
            let inv = field.inv(lead);
            for x in v.iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
    }
}

/// All vectors of `GF(q)^k` whose first nonzero coordinate is 1, in counter order.
pub struct ProjectivePoints {
    q: u8,
    k: usize,
    lead: usize,
    current: Vec<u8>,
    done: bool,
}

impl ProjectivePoints {
    pub fn new(field: &Field, k: usize) -> Self {
        let mut current = vec![0u8; k];
        if k > 0 {
            current[0] = 1;
        }
        ProjectivePoints {
            q: field.q() as u8,
            k,
            lead: 0,
            current,
            done: k == 0,
        }
    }

    pub fn count(q: usize, k: usize) -> u64 {
        ((q as u64).pow(k as u32) - 1) / (q as u64 - 1)
    }
}

impl Iterator for ProjectivePoints {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // increment the free tail after the leading 1
        let mut i = self.k;
        loop {
            if i == self.lead + 1 {
                // tail exhausted: move the leading 1 right
                self.lead += 1;
                if self.lead == self.k {
                    self.done = true;
                } else {
                    self.current.iter_mut().for_each(|x| *x = 0);
                    self.current[self.lead] = 1;
                }
                break;
            }
            i -= 1;
            self.current[i] += 1;
            if self.current[i] < self.q {
                break;
            }
            self.current[i] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let f3 = Field::prime(3).unwrap();
        let (m, r) = rref(&f3, &[vec![1, 2], vec![2, 1]]);
        assert_eq!((m, r), (vec![vec![1, 2]], 1));
        let (m, r) = rref(&f3, &[vec![1, 0], vec![0, 1]]);
        assert_eq!((m, r), (vec![vec![1, 0], vec![0, 1]], 2));
        assert_eq!(rref(&f3, &[vec![0, 0], vec![0, 0]]).1, 0);
    }

    #[test]
    fn projective_points_count() {
        for (p, k) in [(2, 3), (3, 3), (3, 1)] {
            let f = Field::prime(p).unwrap();
            let pts: Vec<_> = ProjectivePoints::new(&f, k).collect();
            assert_eq!(pts.len() as u64, ProjectivePoints::count(p as usize, k));
            assert!(pts.iter().all(|v| v.iter().find(|&&x| x != 0) == Some(&1)));
            let mut sorted = pts.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), pts.len());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::prime(3).unwrap();
        let m = vec![vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]];
        match invert(&f, &m) {
            Some(inv) => {
                for i in 0..3 {
                    for j in 0..3 {
                        let col: Vec<u8> = inv.iter().map(|r| r[j]).collect();
                        assert_eq!(dot(&f, &m[i], &col), u8::from(i == j));
                    }
                }
            }
            None => assert_eq!(rank(&f, &m), 3 - 1),
        }
    }
}
