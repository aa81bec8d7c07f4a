//! Univariate polynomials with coefficients in a [`Field`].

use crate::error::{Error, Result};

use super::{Field, FieldElem};

/// Ascending coefficients, trailing zeros trimmed. The zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(c: FieldElem, deg: usize) -> Self {
        let mut coeffs = vec![FieldElem::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    pub fn x() -> Self {
        Poly::monomial(FieldElem::ONE, 1)
    }

    /// Coefficients given as prime-field integers, ascending.
    pub fn from_ints(field: &Field, ints: &[i64]) -> Self {
        Poly::new(ints.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElem::ONE
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &Field, x: FieldElem) -> FieldElem {
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, field: &Field, c: FieldElem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    /// Applies `map` to every coefficient.
    pub fn map_coeffs(&self, mut map: impl FnMut(FieldElem) -> FieldElem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| map(c)).collect())
    }

    pub fn monic(&self, field: &Field) -> Result<Poly> {
        let inv = field.inv(self.leading())?;
        Ok(self.scale(field, inv))
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn divrem(&self, field: &Field, divisor: &Poly) -> Result<(Poly, Poly)> {
        let db = divisor.degree().ok_or(Error::DivideByZero)?;
        let lead_inv = field.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), Poly::new(rem)));
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - db];
        for t in (db..rem.len()).rev() {
            let c = field.mul(rem[t], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[t - db] = c;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[t - db + i] = field.sub(rem[t - db + i], field.mul(c, b));
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, field: &Field, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(field, divisor)?.1)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, field: &Field, other: &Poly) -> Result<Poly> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b)?;
            a = std::mem::replace(&mut b, r);
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic(field)
        }
    }

    pub fn mulmod(&self, field: &Field, other: &Poly, modulus: &Poly) -> Result<Poly> {
        self.mul(field, other).rem(field, modulus)
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, field: &Field, mut e: u128, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::constant(FieldElem::ONE).rem(field, modulus)?;
        let mut base = self.rem(field, modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(field, &base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(field, &base, modulus)?;
            }
        }
        Ok(acc)
    }
}

/// Distinct-degree irreducibility test over the subfield F_{p^k}: a monic
/// `f` of degree `m` is irreducible iff `gcd(x^{Q^i} - x, f) = 1` for every
/// `1 <= i <= m/2`, with `Q = p^k`.
pub fn is_irreducible(field: &Field, f: &Poly, k: usize) -> Result<bool> {
    let q = field.subfield_order(k)?;
    let m = f.degree().ok_or(Error::NotMonic)?;
    if !f.is_monic() || m == 0 {
        return Err(Error::NotMonic);
    }
    if f.coeffs().iter().any(|&c| !field.in_subfield(c, k)) {
        return Err(Error::NotInSubfield { k });
    }
    let x = Poly::x();
    let mut h = x.clone();
    for _ in 1..=m / 2 {
        h = h.powmod(field, q, f)?;
        let g = h.sub(field, &x).gcd(field, f)?;
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All roots of `f` in the field, ascending by encoding.
///
/// Isolates the split part `gcd(f, x^q - x)` and then separates roots by
/// equal-degree splitting: `(x + delta)^{(q-1)/2} - 1` for odd `p`, the trace
/// form `sum (delta x)^{2^i}` for `p = 2`.
pub fn roots(field: &Field, f: &Poly) -> Result<Vec<FieldElem>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let f = f.monic(field)?;
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let x = Poly::x();
    let xq = x.powmod(field, field.order(), &f)?;
    let split = xq.sub(field, &x).gcd(field, &f)?;
    let mut out = Vec::new();
    split_linear(field, &split, &mut out)?;
    out.sort_unstable();
    Ok(out)
}

fn split_linear(field: &Field, g: &Poly, out: &mut Vec<FieldElem>) -> Result<()> {
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(field.neg(g.coeff(0)));
            return Ok(());
        }
        _ => {}
    }
    let deg = g.degree().unwrap_or(0);
    for delta in field.elements() {
        let probe = if field.characteristic() == 2 {
            if delta.is_zero() {
                continue;
            }
            let mut y = Poly::monomial(delta, 1).rem(field, g)?;
            let mut acc = y.clone();
            for _ in 1..field.degree() {
                y = y.mulmod(field, &y, g)?;
                acc = acc.add(field, &y);
            }
            acc
        } else {
            let lin = Poly::new(vec![delta, FieldElem::ONE]);
            lin.powmod(field, (field.order() - 1) / 2, g)?.sub(field, &Poly::constant(FieldElem::ONE))
        };
        let s = probe.gcd(field, g)?;
        if let Some(ds) = s.degree() {
            if ds > 0 && ds < deg {
                let (other, _) = g.divrem(field, &s)?;
                split_linear(field, &s, out)?;
                split_linear(field, &other, out)?;
                return Ok(());
            }
        }
    }
    Err(Error::NoRootFound)
}

/// The root of `f` with the smallest encoding.
pub fn find_root(field: &Field, f: &Poly) -> Result<FieldElem> {
    roots(field, f)?.into_iter().next().ok_or(Error::NoRootFound)
}
