//! Arithmetic over the small prime fields F_2 and F_3.
//!
//! Field elements are plain `u8` values in `0..q`. Vectors over the field are
//! `[u8]` slices whose position `i` holds the coefficient of message `x_{i+1}`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A prime field of order 2 or 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct PrimeField(u8);

impl PrimeField {
    pub const F2: PrimeField = PrimeField(2);
    pub const F3: PrimeField = PrimeField(3);

    pub fn new(q: i64) -> Result<Self> {
        match q {
            2 => Ok(Self::F2),
            3 => Ok(Self::F3),
            other => Err(Error::UnsupportedField(other)),
        }
    }

    #[inline]
    pub fn order(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        (self.0 - a) % self.0
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        (a * b) % self.0
    }

    /// Multiplicative inverse. Both supported fields are self-inverse on
    /// their nonzero elements.
    #[inline]
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0 && a < self.0);
        a
    }

    /// `acc += coeff * v`, coordinate-wise.
    pub fn axpy(self, acc: &mut [u8], coeff: u8, v: &[u8]) {
        if coeff == 0 {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = (*a + coeff * x) % self.0;
        }
    }

    /// Inner product of two vectors.
    pub fn dot(self, a: &[u8], b: &[u8]) -> u8 {
        let s: u32 = a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum();
        (s % self.0 as u32) as u8
    }

    /// Scales `v` so that its first nonzero coordinate is 1.
    pub fn normalize(self, v: &mut [u8]) {
        if let Some(&lead) = v.iter().find(|&&x| x != 0) {
            let s = self.inv(lead);
            for x in v.iter_mut() {
                *x = self.mul(*x, s);
            }
        }
    }

    pub fn is_normalized(self, v: &[u8]) -> bool {
        v.iter().find(|&&x| x != 0) == Some(&1)
    }

    /// Finds coefficients `c` with `sum_i c[i] * generators[i] == target`.
    ///
    /// Returns `None` when `target` is outside the span. Free variables are
    /// set to zero, so the solution is unique whenever the generators are
    /// linearly independent.
    pub fn solve(self, generators: &[&[u8]], target: &[u8]) -> Option<Vec<u8>> {
        let k = generators.len();
        let n = target.len();
        // Row-major augmented matrix: n equations, k unknowns + rhs.
        let w = k + 1;
        let mut m = vec![0u8; n * w];
        for r in 0..n {
            for (c, g) in generators.iter().enumerate() {
                m[r * w + c] = g[r];
            }
            m[r * w + k] = target[r];
        }
        let mut pivots = Vec::with_capacity(k.min(n));
        let mut row = 0;
        for col in 0..k {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&r| m[r * w + col] != 0) else {
                continue;
            };
            if p != row {
                for c in 0..w {
                    m.swap(p * w + c, row * w + c);
                }
            }
            let s = self.inv(m[row * w + col]);
            for c in 0..w {
                m[row * w + c] = self.mul(m[row * w + c], s);
            }
            for r in 0..n {
                if r != row {
                    let f = m[r * w + col];
                    if f != 0 {
                        for c in 0..w {
                            let v = self.mul(f, m[row * w + c]);
                            m[r * w + c] = self.sub(m[r * w + c], v);
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if (row..n).any(|r| m[r * w + k] != 0) {
            return None;
        }
        let mut x = vec![0u8; k];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = m[r * w + k];
        }
        Some(x)
    }

    pub fn in_span(self, generators: &[&[u8]], target: &[u8]) -> bool {
        self.solve(generators, target).is_some()
    }

    /// Rank of the given list of vectors.
    pub fn rank(self, vectors: &[&[u8]]) -> usize {
        let Some(n) = vectors.first().map(|v| v.len()) else {
            return 0;
        };
        let mut rows: Vec<Vec<u8>> = vectors.iter().map(|v| v.to_vec()).collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let s = self.inv(rows[rank][col]);
            let pivot: Vec<u8> = rows[rank].iter().map(|&x| self.mul(x, s)).collect();
            for (r, other) in rows.iter_mut().enumerate() {
                if r != rank && other[col] != 0 {
                    let f = self.neg(other[col]);
                    self.axpy(other, f, &pivot);
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
        rank
    }
}

impl TryFrom<i64> for PrimeField {
    type Error = Error;
    fn try_from(q: i64) -> Result<Self> {
        PrimeField::new(q)
    }
}

impl From<PrimeField> for i64 {
    fn from(f: PrimeField) -> i64 {
        f.0 as i64
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

/// Standard basis vector `e_i` of length `n` (0-based `i`).
pub fn unit(n: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0u8; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_other_orders() {
        assert!(PrimeField::new(5).is_err());
        assert!(PrimeField::new(4).is_err());
        assert_eq!(PrimeField::new(3).unwrap(), PrimeField::F3);
    }

    #[test]
    fn f3_arithmetic_tables() {
        let f = PrimeField::F3;
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.sub(0, 1), 2);
        assert_eq!(f.neg(1), 2);
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.mul(f.inv(2), 2), 1);
    }

    #[test]
    fn solve_recovers_combination() {
        let f = PrimeField::F2;
        let a = [1, 1, 0];
        let b = [0, 1, 1];
        let t = [1, 0, 1];
        let x = f.solve(&[&a, &b], &t).unwrap();
        assert_eq!(x, vec![1, 1]);
        assert!(f.solve(&[&a, &b], &[1, 0, 0]).is_none());
    }

    #[test]
    fn normalize_sets_leading_one() {
        let f = PrimeField::F3;
        let mut v = vec![0, 2, 1];
        f.normalize(&mut v);
        assert_eq!(v, vec![0, 1, 2]);
        assert!(f.is_normalized(&v));
    }

    fn vec_strategy(q: u8, n: usize) -> impl Strategy<Value = Vec<u8>> {
        proptest::collection::vec(0..q, n)
    }

    proptest! {
        #[test]
        fn solve_is_consistent_with_brute_force(
            q in prop_oneof![Just(2u8), Just(3u8)],
            gens in proptest::collection::vec(vec_strategy(3, 4), 0..4),
            target in vec_strategy(3, 4),
        ) {
            let f = PrimeField::new(q as i64).unwrap();
            let gens: Vec<Vec<u8>> = gens.into_iter().map(|g| g.into_iter().map(|x| x % q).collect()).collect();
            let target: Vec<u8> = target.into_iter().map(|x| x % q).collect();
            let refs: Vec<&[u8]> = gens.iter().map(|g| g.as_slice()).collect();

            // Enumerate every coefficient vector.
            let k = gens.len();
            let total = (q as usize).pow(k as u32);
            let mut reachable = false;
            for code in 0..total {
                let mut acc = vec![0u8; 4];
                let mut c = code;
                for g in &gens {
                    f.axpy(&mut acc, (c % q as usize) as u8, g);
                    c /= q as usize;
                }
                if acc == target { reachable = true; break; }
            }
            match f.solve(&refs, &target) {
                Some(x) => {
                    prop_assert!(reachable);
                    let mut acc = vec![0u8; 4];
                    for (g, &c) in gens.iter().zip(&x) { f.axpy(&mut acc, c, g); }
                    prop_assert_eq!(acc, target);
                }
                None => prop_assert!(!reachable),
            }
        }
    }
}
