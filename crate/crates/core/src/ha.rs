//! The subfield reduction of `x^d + a x`: lambda coefficients, `h_a`,
//! Dickson polynomials and normalized quintic classification.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, Poly, Residue};
use crate::nt;

/// Elementary symmetric functions `(lambda_1, ..., lambda_r)` of the
/// conjugates `a, a^{p^k}, ..., a^{p^{(r-1)k}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaVec {
    k: usize,
    entries: Vec<FieldElem>,
}

impl LambdaVec {
    pub fn r(&self) -> usize {
        self.entries.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `lambda_1, ..., lambda_r`.
    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    /// `lambda_i` for `1 <= i <= r`; `lambda_0 = 1`.
    pub fn get(&self, i: usize) -> FieldElem {
        if i == 0 {
            FieldElem::ONE
        } else {
            self.entries[i - 1]
        }
    }

    /// Coefficients of `h_a(x) = x^{r+1} + lambda_1 x^r + ... + lambda_r x`,
    /// ascending.
    pub fn h_coeffs(&self) -> Vec<FieldElem> {
        let mut c = Vec::with_capacity(self.r() + 2);
        c.push(FieldElem::ZERO);
        c.extend(self.entries.iter().rev().copied());
        c.push(FieldElem::ONE);
        c
    }
}

fn check_shape(field: &Field, r: usize, k: usize) -> Result<()> {
    let n = field.degree();
    if r == 0 || k == 0 || r * k != n {
        return Err(Error::DegreeMismatch { n, r, k });
    }
    Ok(())
}

/// Expands `prod_{i<r} (x + a^{p^{ik}})` incrementally.
pub fn lambda_coeffs(field: &Field, a: FieldElem, r: usize, k: usize) -> Result<LambdaVec> {
    check_shape(field, r, k)?;
    // coeffs[i] is the coefficient of x^{r'-i} after r' factors.
    let mut coeffs = vec![FieldElem::ONE];
    for i in 0..r {
        let ai = field.frobenius(a, i * k);
        coeffs.push(FieldElem::ZERO);
        for j in (1..coeffs.len()).rev() {
            coeffs[j] = field.add(coeffs[j], field.mul(coeffs[j - 1], ai));
        }
    }
    let entries = coeffs.split_off(1);
    if let Some(i) = entries.iter().position(|&l| !field.in_subfield(l, k)) {
        return Err(Error::Hypothesis(format!("lambda_{} is not in F_(p^{k})", i + 1)));
    }
    Ok(LambdaVec { k, entries })
}

/// Horner evaluation of `h_a` at `x`.
pub fn h_a_eval(field: &Field, lv: &LambdaVec, x: FieldElem) -> FieldElem {
    let inner = lv.entries.iter().fold(FieldElem::ONE, |acc, &l| field.add(field.mul(acc, x), l));
    field.mul(inner, x)
}

/// Whether `h_a` permutes F_{p^k}; equivalently whether `x^d + a x`
/// permutes F_{p^n} for `d = (p^n - 1)/(p^k - 1) + 1`.
pub fn ha_pp_check(field: &Field, a: FieldElem, r: usize, k: usize) -> Result<bool> {
    HaScanner::new(field, r, k)?.check(a)
}

/// `d = (p^{rk} - 1)/(p^k - 1) + 1`.
pub fn ha_exponent(p: u64, r: usize, k: usize) -> Result<u128> {
    let pk = checked_pow(p as u128, k)?;
    let prk = checked_pow(pk, r)?;
    Ok((prk - 1) / (pk - 1) + 1)
}

fn checked_pow(base: u128, e: usize) -> Result<u128> {
    u32::try_from(e)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or_else(|| Error::CapExceeded(format!("{base}^{e} overflows")))
}

/// Repeated `h_a` permutation tests for one `(field, r, k)`, with the
/// subfield and its power table computed once.
pub struct HaScanner<'f> {
    field: &'f Field,
    r: usize,
    k: usize,
    sub: Vec<FieldElem>,
    /// `powers[x * (r + 2) + j] = sub[x]^j`.
    powers: Vec<FieldElem>,
}

impl<'f> HaScanner<'f> {
    pub fn new(field: &'f Field, r: usize, k: usize) -> Result<Self> {
        check_shape(field, r, k)?;
        let sub = field.subfield_elements(k)?;
        let mut powers = Vec::with_capacity(sub.len() * (r + 2));
        for &x in &sub {
            let mut acc = FieldElem::ONE;
            for _ in 0..r + 2 {
                powers.push(acc);
                acc = field.mul(acc, x);
            }
        }
        Ok(HaScanner { field, r, k, sub, powers })
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn subfield(&self) -> &[FieldElem] {
        &self.sub
    }

    pub fn lambdas(&self, a: FieldElem) -> Result<LambdaVec> {
        lambda_coeffs(self.field, a, self.r, self.k)
    }

    pub fn check(&self, a: FieldElem) -> Result<bool> {
        Ok(self.is_pp(&self.lambdas(a)?))
    }

    /// Whether `h` with the given lambdas permutes the subfield.
    pub fn is_pp(&self, lv: &LambdaVec) -> bool {
        let f = self.field;
        let w = self.r + 2;
        let mut images: Vec<FieldElem> = Vec::with_capacity(self.sub.len());
        for row in self.powers.chunks_exact(w) {
            // h(x) = x^{r+1} + sum_i lambda_i x^{r+1-i}
            let mut y = row[self.r + 1];
            for (i, &l) in lv.entries.iter().enumerate() {
                if !l.is_zero() {
                    y = f.add(y, f.mul(l, row[self.r - i]));
                }
            }
            images.push(y);
        }
        images.sort_unstable();
        images.windows(2).all(|p| p[0] != p[1])
    }
}

/// A polynomial whose coefficients all lie in F_{p^k}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldPoly {
    k: usize,
    coeffs: Vec<FieldElem>,
}

impl SubfieldPoly {
    pub fn new(field: &Field, coeffs: Vec<FieldElem>, k: usize) -> Result<Self> {
        field.check_divisor(k)?;
        if coeffs.iter().any(|&c| !field.in_subfield(c, k)) {
            return Err(Error::NotInSubfield { k });
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(SubfieldPoly { k, coeffs })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, field: &Field, x: FieldElem) -> FieldElem {
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// Whether the polynomial permutes F_{p^k}.
    pub fn permutes_subfield(&self, field: &Field) -> Result<bool> {
        let mut images: Vec<FieldElem> =
            field.subfield_elements(self.k)?.into_iter().map(|x| self.eval(field, x)).collect();
        images.sort_unstable();
        Ok(images.windows(2).all(|p| p[0] != p[1]))
    }
}

/// The shift-normalized quintic `x^5 + A3 x^3 + A2 x^2 + A1 x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DepressedQuintic {
    pub a3: FieldElem,
    pub a2: FieldElem,
    pub a1: FieldElem,
}

/// Substitutes `x -> x - lambda_1/5` in `h_a` (r = 4) and drops the
/// constant term.
pub fn depressed_quintic(field: &Field, lv: &LambdaVec) -> Result<DepressedQuintic> {
    if field.characteristic() == 5 {
        return Err(Error::CharFive);
    }
    if lv.r() != 4 {
        return Err(Error::Hypothesis(format!("depressed quintic needs r = 4, got r = {}", lv.r())));
    }
    let q = |num: i64, den: i64| field.div(field.from_int(num), field.from_int(den)).expect("p != 5");
    let (l1, l2, l3, l4) = (lv.get(1), lv.get(2), lv.get(3), lv.get(4));
    let m = |x: FieldElem, y: FieldElem| field.mul(x, y);
    let l1_2 = m(l1, l1);
    let l1_3 = m(l1_2, l1);
    let l1_4 = m(l1_3, l1);
    let a3 = field.sub(l2, m(q(2, 5), l1_2));
    let a2 = field.sub(field.add(l3, m(q(4, 25), l1_3)), m(q(3, 5), m(l1, l2)));
    let a1 = field.add(
        field.sub(field.sub(l4, m(q(2, 5), m(l1, l3))), m(q(3, 125), l1_4)),
        m(q(3, 25), m(l2, l1_2)),
    );
    Ok(DepressedQuintic { a3, a2, a1 })
}

/// Rows of the normalized permutation quintics over odd `q` with `5 ∤ q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuinticRow {
    /// `x^5`, `q != 1 mod 5`.
    Monomial,
    /// `x^5 + v x`, `v^2 = -1`, `q = 9`.
    Q9,
    /// `x^5 ± 2x^2`, `q = 7`.
    Q7Square,
    /// `x^5 + v x^3 ± x^2 + 3v^2 x`, `v` a non-square, `q = 7`.
    Q7Mixed,
    /// `x^5 + v x^3 + 5^{-1} v^2 x`, `q = ±2 mod 5`.
    FifthInverse,
    /// `x^5 + v x^3 + 3 v^2 x`, `v` a non-square, `q = 13`.
    Q13,
    /// `x^5 + x`, `q = 3`.
    Q3Linear,
    /// `x^5 + 2x^3 + x`, `q = 3`.
    Q3Cubic,
    /// `x^5 + x^3`, `q = 3`.
    Q3Pure,
}

impl QuinticRow {
    pub fn as_str(self) -> &'static str {
        match self {
            QuinticRow::Monomial => "x^5",
            QuinticRow::Q9 => "x^5+vx",
            QuinticRow::Q7Square => "x^5+-2x^2",
            QuinticRow::Q7Mixed => "x^5+vx^3+-x^2+3v^2x",
            QuinticRow::FifthInverse => "x^5+vx^3+5^-1v^2x",
            QuinticRow::Q13 => "x^5+vx^3+3v^2x",
            QuinticRow::Q3Linear => "x^5+x",
            QuinticRow::Q3Cubic => "x^5+2x^3+x",
            QuinticRow::Q3Pure => "x^5+x^3",
        }
    }
}

impl fmt::Display for QuinticRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Matches `x^5 + A3 x^3 + A2 x^2 + A1 x` against the normalized quintic
/// permutation rows that apply to `q = p^k` (odd, not a power of 5).
///
/// A returned row is a sufficient condition for the quintic to permute
/// F_q; `None` makes no claim.
pub fn classify_quintic_pp(field: &Field, dq: &DepressedQuintic, k: usize) -> Result<Option<QuinticRow>> {
    let p = field.characteristic();
    if p == 5 {
        return Err(Error::CharFive);
    }
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let q = field.subfield_order(k)?;
    for c in [dq.a3, dq.a2, dq.a1] {
        if !field.in_subfield(c, k) {
            return Err(Error::NotInSubfield { k });
        }
    }
    let DepressedQuintic { a3, a2, a1 } = *dq;
    let int = |v: i64| field.from_int(v);
    let sq = |v: FieldElem| field.mul(v, v);
    let non_square = |v: FieldElem| -> Result<bool> { Ok(!v.is_zero() && !field.residue_test(v, k, Residue::Square)?) };

    if a3.is_zero() && a2.is_zero() && a1.is_zero() && q % 5 != 1 {
        return Ok(Some(QuinticRow::Monomial));
    }
    if q == 9 && a3.is_zero() && a2.is_zero() && sq(a1) == field.neg_one() {
        return Ok(Some(QuinticRow::Q9));
    }
    if q == 7 {
        if a3.is_zero() && a1.is_zero() && (a2 == int(2) || a2 == int(-2)) {
            return Ok(Some(QuinticRow::Q7Square));
        }
        if non_square(a3)? && (a2 == int(1) || a2 == int(-1)) && a1 == field.mul(int(3), sq(a3)) {
            return Ok(Some(QuinticRow::Q7Mixed));
        }
    }
    if matches!(q % 5, 2 | 3) && a2.is_zero() && a1 == field.div(sq(a3), int(5))? {
        return Ok(Some(QuinticRow::FifthInverse));
    }
    if q == 13 && a2.is_zero() && non_square(a3)? && a1 == field.mul(int(3), sq(a3)) {
        return Ok(Some(QuinticRow::Q13));
    }
    if q == 3 && a2.is_zero() {
        let row = match (a3.encoding(), a1.encoding()) {
            (0, 1) => Some(QuinticRow::Q3Linear),
            (2, 1) => Some(QuinticRow::Q3Cubic),
            (1, 0) => Some(QuinticRow::Q3Pure),
            _ => None,
        };
        return Ok(row);
    }
    Ok(None)
}

/// Integer coefficient `l/(l-j) * C(l-j, j)` of `x^{l-2j}` in `D_l`.
fn dickson_integer(l: u64, j: u64) -> BigUint {
    if j == 0 {
        return BigUint::from(1u32);
    }
    let mut binom = BigUint::from(1u32);
    for i in 0..j {
        binom = binom * (l - j - i) / (i + 1);
    }
    binom * l / (l - j)
}

/// `D_l(x, eta) = sum_{j <= l/2} l/(l-j) C(l-j, j) (-eta)^j x^{l-2j}`.
pub fn dickson_poly(field: &Field, l: u64, eta: FieldElem, k: usize) -> Result<SubfieldPoly> {
    if l == 0 {
        return Err(Error::Hypothesis("Dickson degree must be positive".into()));
    }
    if !field.in_subfield(eta, k) {
        return Err(Error::NotInSubfield { k });
    }
    let p = BigUint::from(field.characteristic());
    let neg_eta = field.neg(eta);
    let mut coeffs = vec![FieldElem::ZERO; l as usize + 1];
    let mut eta_pow = FieldElem::ONE;
    for j in 0..=l / 2 {
        let c = dickson_integer(l, j) % &p;
        let c = u64::try_from(c).expect("reduced below p");
        coeffs[(l - 2 * j) as usize] = field.mul(field.from_int(c as i64), eta_pow);
        eta_pow = field.mul(eta_pow, neg_eta);
    }
    SubfieldPoly::new(field, coeffs, k)
}

/// `D_l(x, eta)` with `eta != 0` permutes F_{p^k} iff `gcd(l, p^{2k} - 1) = 1`.
pub fn dickson_is_pp(p: u64, l: u64, k: usize) -> Result<bool> {
    let q2 = checked_pow(p as u128, 2 * k)?;
    Ok(nt::gcd(l as u128, q2 - 1) == 1)
}

/// The `eta != 0` with `h_a(x + c) - h_a(c) = D_l(x, eta)`, if any.
///
/// `D_l` has no `x^{l-1}` term, so when `p ∤ l` the shift is forced to be
/// `c = -lambda_1/l`; otherwise every `c` in F_{p^k} is tried. When
/// `l >= p^k` two polynomials can agree as maps of F_{p^k} without being
/// equal, and the comparison falls back to evaluation on the subfield.
pub fn is_dickson_of_degree(field: &Field, lv: &LambdaVec, l: u64) -> Option<FieldElem> {
    let h = Poly::new(lv.h_coeffs());
    if h.degree() != Some(l as usize) || l < 2 {
        return None;
    }
    let k = lv.k();
    let sub = field.subfield_elements(k).ok()?;
    let l_elem = field.from_int((l % field.characteristic()) as i64);
    let shifts: Vec<FieldElem> =
        if l_elem.is_zero() { sub.clone() } else { vec![field.div(field.neg(lv.get(1)), l_elem).ok()?] };
    let exact = shifts.into_iter().find_map(|c| {
        let g = taylor_shift(field, &h, c);
        let candidates: Vec<FieldElem> = if l_elem.is_zero() {
            sub.clone()
        } else {
            // The x^{l-2} coefficient of D_l is -l * eta.
            vec![field.div(field.neg(g.coeff(l as usize - 2)), l_elem).ok()?]
        };
        candidates
            .into_iter()
            .filter(|e| !e.is_zero())
            .find(|&eta| dickson_poly(field, l, eta, k).is_ok_and(|d| d.coeffs() == g.coeffs()))
    });
    if exact.is_some() || (l as u128) < field.p_pow(k) || sub.len() > 1 << 8 {
        return exact;
    }
    sub.iter().find_map(|&c| {
        let hc = h.eval(field, c);
        let g: Vec<FieldElem> = sub.iter().map(|&x| field.sub(h.eval(field, field.add(x, c)), hc)).collect();
        sub.iter().filter(|e| !e.is_zero()).copied().find(|&eta| {
            dickson_poly(field, l, eta, k)
                .is_ok_and(|d| sub.iter().zip(&g).all(|(&x, &gx)| d.eval(field, x) == gx))
        })
    })
}

/// `h(x + c) - h(c)`.
fn taylor_shift(field: &Field, h: &Poly, c: FieldElem) -> Poly {
    let lin = Poly::new(vec![c, FieldElem::ONE]);
    let shifted = h
        .coeffs()
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, &a| acc.mul(field, &lin).add(field, &Poly::constant(a)));
    let mut coeffs = shifted.coeffs().to_vec();
    if let Some(c0) = coeffs.first_mut() {
        *c0 = FieldElem::ZERO;
    }
    Poly::new(coeffs)
}
