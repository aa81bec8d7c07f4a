//! Exact arithmetic in Z[w], w a primitive p-th root of unity.

use std::fmt;
use std::ops::{Add, Mul};

/// `sum counts[j] * w^j`, stored modulo `1 + w + ... + w^{p-1} = 0`.
///
/// The canonical representative has `counts[p-1] = 0`; equality compares
/// canonical forms.
#[derive(Clone, Debug)]
pub struct CycInt {
    counts: Vec<i64>,
}

impl CycInt {
    pub fn zero(p: usize) -> Self {
        CycInt { counts: vec![0; p] }
    }

    pub fn from_int(p: usize, v: i64) -> Self {
        let mut z = CycInt::zero(p);
        z.counts[0] = v;
        z
    }

    /// `w^j`.
    pub fn omega_pow(p: usize, j: usize) -> Self {
        let mut z = CycInt::zero(p);
        z.counts[j % p] = 1;
        z
    }

    /// From a histogram: `counts[j]` copies of `w^j`.
    pub fn from_counts(counts: Vec<i64>) -> Self {
        assert!(!counts.is_empty());
        CycInt { counts }
    }

    pub fn p(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn canonical(&self) -> CycInt {
        let top = *self.counts.last().expect("nonempty");
        CycInt { counts: self.counts.iter().map(|&c| c - top).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().counts.iter().all(|&c| c == 0)
    }

    /// The rational integer this equals, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        let c = self.canonical();
        c.counts[1..].iter().all(|&v| v == 0).then_some(c.counts[0])
    }

    /// Complex conjugation, `w -> w^{-1}`.
    pub fn conj(&self) -> CycInt {
        let p = self.p();
        CycInt { counts: (0..p).map(|j| self.counts[(p - j) % p]).collect() }
    }

    /// `|z|^2 = z * conj(z)`.
    pub fn norm_sq(&self) -> CycInt {
        self * &self.conj()
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.canonical().counts == other.canonical().counts
    }
}

impl Eq for CycInt {}

impl Add for &CycInt {
    type Output = CycInt;

    fn add(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p(), rhs.p());
        CycInt { counts: self.counts.iter().zip(&rhs.counts).map(|(a, b)| a + b).collect() }
    }
}

impl Mul for &CycInt {
    type Output = CycInt;

    fn mul(self, rhs: &CycInt) -> CycInt {
        let p = self.p();
        assert_eq!(p, rhs.p());
        let mut out = vec![0i64; p];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.counts.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        CycInt { counts: out }
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        if let Some(v) = c.as_integer() {
            return write!(f, "{v}");
        }
        let terms: Vec<String> = c
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(j, v)| if j == 0 { format!("{v}") } else { format!("{v}*w^{j}") })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_all_roots_is_zero() {
        let z = CycInt::from_counts(vec![1; 5]);
        assert!(z.is_zero());
        assert_eq!(z.as_integer(), Some(0));
    }

    #[test]
    fn omega_has_order_p() {
        let w = CycInt::omega_pow(7, 1);
        let mut acc = CycInt::from_int(7, 1);
        for _ in 0..7 {
            acc = &acc * &w;
        }
        assert_eq!(acc, CycInt::from_int(7, 1));
    }

    #[test]
    fn gauss_sum_norm() {
        // Quadratic Gauss sum over F_5: |G|^2 = 5.
        let p = 5;
        let mut counts = vec![0; p];
        for x in 0..p {
            counts[x * x % p] += 1;
        }
        let g = CycInt::from_counts(counts);
        assert_eq!(g.norm_sq().as_integer(), Some(5));
        assert_eq!(g.as_integer(), None);
    }
}
