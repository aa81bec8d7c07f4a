//! CPP families: exponents, coefficient predicates and generators, and the
//! conjecture checks built on them.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{poly, Field, FieldElem, Poly, Residue};
use crate::ha::{dickson_poly, is_dickson_of_degree, lambda_coeffs, HaScanner, LambdaVec, SubfieldPoly};
use crate::niho::NihoCtx;
use crate::nt;
use crate::oracle::FieldMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyId {
    Niho2,
    P3k2,
    R4General,
    R4P3,
    R4P3Beta,
    R4P5,
    R4P5Vset,
    R6P3,
    R6P5,
    RpK1,
    RtK1,
    Multinomial,
    Conj1,
    Conj2,
}

impl FamilyId {
    pub const ALL: [FamilyId; 14] = [
        FamilyId::Niho2,
        FamilyId::P3k2,
        FamilyId::R4General,
        FamilyId::R4P3,
        FamilyId::R4P3Beta,
        FamilyId::R4P5,
        FamilyId::R4P5Vset,
        FamilyId::R6P3,
        FamilyId::R6P5,
        FamilyId::RpK1,
        FamilyId::RtK1,
        FamilyId::Multinomial,
        FamilyId::Conj1,
        FamilyId::Conj2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Niho2 => "niho2",
            FamilyId::P3k2 => "p3k2",
            FamilyId::R4General => "r4_general",
            FamilyId::R4P3 => "r4_p3",
            FamilyId::R4P3Beta => "r4_p3_beta",
            FamilyId::R4P5 => "r4_p5",
            FamilyId::R4P5Vset => "r4_p5_vset",
            FamilyId::R6P3 => "r6_p3",
            FamilyId::R6P5 => "r6_p5",
            FamilyId::RpK1 => "rp_k1",
            FamilyId::RtK1 => "rt_k1",
            FamilyId::Multinomial => "multinomial",
            FamilyId::Conj1 => "conj1",
            FamilyId::Conj2 => "conj2",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

/// Which coefficient condition of a family a value satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConditionTag {
    pub family: FamilyId,
    pub index: u8,
    /// Parameters that made the condition hold, such as `v=3`.
    pub witness: Option<String>,
}

impl ConditionTag {
    fn new(family: FamilyId, index: u8) -> Self {
        ConditionTag { family, index, witness: None }
    }

    fn with_witness(family: FamilyId, index: u8, witness: String) -> Self {
        ConditionTag { family, index, witness: Some(witness) }
    }

    /// `"<family> cond <index>"`, the key used in reports.
    pub fn label(&self) -> String {
        format!("{} cond {}", self.family, self.index)
    }
}

impl fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) => write!(f, "{} ({w})", self.label()),
            None => f.write_str(&self.label()),
        }
    }
}

fn pow_u128(p: u64, e: usize) -> Result<u128> {
    u32::try_from(e)
        .ok()
        .and_then(|e| (p as u128).checked_pow(e))
        .filter(|&v| v < 1 << 127)
        .ok_or_else(|| Error::CapExceeded(format!("{p}^{e} exceeds 2^127")))
}

/// `d = (p^k - 1)(p^i - 1)/2 + p^i` over F_{p^{2k}}, `1 <= i <= 2k`.
pub fn niho2_exponent(p: u64, k: usize, i: usize) -> Result<u128> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if k == 0 || i == 0 || i > 2 * k {
        return Err(Error::Hypothesis(format!("need 1 <= i <= 2k, got i = {i}, k = {k}")));
    }
    let pk = pow_u128(p, k)?;
    let pi = pow_u128(p, i)?;
    let d = (pk - 1)
        .checked_mul((pi - 1) / 2)
        .and_then(|v| v.checked_add(pi))
        .ok_or_else(|| Error::CapExceeded("exponent overflows".into()))?;
    let m = pow_u128(p, 2 * k)? - 1;
    if nt::gcd(d, m) != 1 {
        return Err(Error::GcdViolation(format!("gcd({d}, {m}) != 1")));
    }
    Ok(d)
}

/// `d = 3^k + 2` over F_{3^{2k}}.
pub fn p3k2_exponent(k: usize) -> Result<u128> {
    niho2_exponent(3, k, 1)
}

/// The coefficients `a` for which `a^{-1} x^d` is claimed to be a CPP for
/// the Niho exponents above: the set `V`.
pub fn niho2_coefficient_set(nctx: &NihoCtx<'_>) -> Result<Vec<FieldElem>> {
    nctx.v_set()
}

/// `d = (p^{rk} - 1)/(p^k - 1) + 1`, requiring `gcd(r + 1, p^k - 1) = 1`.
pub fn dr_exponent(p: u64, k: usize, r: usize) -> Result<u128> {
    let pk = pow_u128(p, k)?;
    if nt::gcd(r as u128 + 1, pk - 1) != 1 {
        return Err(Error::GcdViolation(format!("gcd({}, {}) != 1", r + 1, pk - 1)));
    }
    let prk = pow_u128(p, r * k)?;
    Ok((prk - 1) / (pk - 1) + 1)
}

fn check_r4_shape(field: &Field, k: usize) -> Result<()> {
    let n = field.degree();
    if k == 0 || 4 * k != n {
        return Err(Error::DegreeMismatch { n, r: 4, k });
    }
    Ok(())
}

/// Small helper for writing the polynomial identities in the conditions.
struct Lam<'f> {
    f: &'f Field,
    l: [FieldElem; 5],
}

impl<'f> Lam<'f> {
    fn new(f: &'f Field, lv: &LambdaVec) -> Self {
        Lam { f, l: [lv.get(0), lv.get(1), lv.get(2), lv.get(3), lv.get(4)] }
    }

    fn c(&self, v: i64) -> FieldElem {
        self.f.from_int(v)
    }

    /// `coef * lambda_1^e1 * lambda_i^ei * ...` for a list of factors.
    fn term(&self, coef: i64, factors: &[(usize, u128)]) -> FieldElem {
        factors.iter().fold(self.c(coef), |acc, &(i, e)| self.f.mul(acc, self.f.pow(self.l[i], e)))
    }

    fn sum(&self, terms: &[FieldElem]) -> FieldElem {
        terms.iter().fold(FieldElem::ZERO, |acc, &t| self.f.add(acc, t))
    }
}

/// The r = 4 theorem for `p != 5` with `gcd(5, p^k - 1) = 1`: tags the first
/// of conditions 1)-8) that `a` satisfies.
pub fn thm_r4_condition(field: &Field, a: FieldElem, k: usize) -> Result<Option<ConditionTag>> {
    check_r4_hypotheses(field, k)?;
    if a.is_zero() {
        return Ok(None);
    }
    r4_condition_from_lambdas(field, &lambda_coeffs(field, a, 4, k)?)
}

fn check_r4_hypotheses(field: &Field, k: usize) -> Result<()> {
    let p = field.characteristic();
    if p == 2 || p == 5 {
        return Err(Error::CharExcluded(p));
    }
    check_r4_shape(field, k)?;
    let qk = field.p_pow(k);
    if nt::gcd(5, qk - 1) != 1 {
        return Err(Error::GcdViolation(format!("gcd(5, {}) != 1", qk - 1)));
    }
    Ok(())
}

/// As [`thm_r4_condition`], from precomputed lambdas.
pub fn r4_condition_from_lambdas(field: &Field, lv: &LambdaVec) -> Result<Option<ConditionTag>> {
    let id = FamilyId::R4General;
    let f = field;
    let p = f.characteristic();
    let k = lv.k();
    let q = f.p_pow(k);
    let dq = crate::ha::depressed_quintic(f, lv)?;
    let x = Lam::new(f, lv);
    let zero = FieldElem::ZERO;

    if dq.a3 == zero && dq.a1 == zero && dq.a2 == zero {
        return Ok(Some(ConditionTag::new(id, 1)));
    }
    if matches!(q % 5, 2 | 3) && dq.a2 == zero && f.div(f.mul(dq.a3, dq.a3), x.c(5))? == dq.a1 {
        return Ok(Some(ConditionTag::new(id, 2)));
    }
    let l1_2 = x.term(1, &[(1, 2)]);
    let neg_l1_3 = x.term(-1, &[(1, 3)]);
    let l1_4 = x.term(1, &[(1, 4)]);
    if p == 3 && k == 2 && x.l[2] == l1_2 && x.l[3] == neg_l1_3 {
        let s = f.add(x.l[4], l1_4);
        if f.mul(s, s) == f.neg_one() {
            return Ok(Some(ConditionTag::new(id, 3)));
        }
    }
    if p == 3 && k == 1 && x.l[3] == neg_l1_3 {
        if x.l[2] == f.add(l1_2, x.c(1)) && x.l[4] == f.neg(l1_4) {
            return Ok(Some(ConditionTag::new(id, 4)));
        }
        if x.l[2] == f.add(l1_2, x.c(2)) && x.l[4] == f.add(f.neg(l1_4), x.c(1)) {
            return Ok(Some(ConditionTag::new(id, 5)));
        }
    }
    if p == 7 && k == 1 {
        let e1 = x.sum(&[l1_2, x.l[2]]);
        let e2 = x.sum(&[
            x.term(1, &[(1, 1), (3, 1)]),
            x.term(3, &[(1, 4)]),
            x.term(-1, &[(2, 1), (1, 2)]),
            x.l[4],
        ]);
        let e3 = x.sum(&[x.l[3], x.term(1, &[(1, 3)]), x.term(-2, &[(1, 1), (2, 1)])]);
        if e1 == zero && e2 == zero && (e3 == x.c(2) || e3 == x.c(-2)) {
            return Ok(Some(ConditionTag::new(id, 6)));
        }
        for v in [3, 5, 6] {
            let v_el = x.c(v);
            if e1 == v_el && e2 == f.mul(x.c(3), f.mul(v_el, v_el)) && (e3 == x.c(1) || e3 == x.c(-1)) {
                return Ok(Some(ConditionTag::with_witness(id, 7, format!("v={v}"))));
            }
        }
    }
    if p == 13 && k == 1 {
        let e1 = x.sum(&[x.term(-3, &[(1, 2)]), x.l[2]]);
        let e2 = x.sum(&[
            x.term(-3, &[(1, 1), (3, 1)]),
            x.term(-2, &[(1, 4)]),
            x.term(-3, &[(2, 1), (1, 2)]),
            x.l[4],
        ]);
        let e3 = x.sum(&[x.l[3], x.term(-4, &[(1, 3)]), x.term(2, &[(1, 1), (2, 1)])]);
        if e3 == zero {
            for v in [2, -2, 5, -5, 6, -6] {
                let v_el = x.c(v);
                if e1 == v_el && e2 == f.mul(x.c(3), f.mul(v_el, v_el)) {
                    return Ok(Some(ConditionTag::with_witness(id, 8, format!("v={v}"))));
                }
            }
        }
    }
    Ok(None)
}

/// The p = 3 specialization of the r = 4 theorem: its own conditions 1)
/// (`k = 2 mod 4`) and 2) (`k` odd), plus the inherited theorem conditions
/// 3)-5).
pub fn coro_p3n4k_condition(field: &Field, a: FieldElem, k: usize) -> Result<Option<ConditionTag>> {
    let p = field.characteristic();
    if p != 3 {
        return Err(Error::WrongCharacteristic { expected: 3, got: p });
    }
    check_r4_hypotheses(field, k)?;
    if a.is_zero() {
        return Ok(None);
    }
    let lv = lambda_coeffs(field, a, 4, k)?;
    let f = field;
    let x = Lam::new(f, &lv);
    let id = FamilyId::R4P3;
    let l1_2 = x.term(1, &[(1, 2)]);
    let neg_l1_3 = x.term(-1, &[(1, 3)]);
    if k % 4 == 2 && x.l[2] == l1_2 && x.l[3] == neg_l1_3 && x.l[4] == x.term(-1, &[(1, 4)]) {
        return Ok(Some(ConditionTag::new(id, 1)));
    }
    if k % 2 == 1 && x.l[3] == neg_l1_3 {
        let diff = f.sub(x.l[2], l1_2);
        let lhs = f.neg(f.mul(diff, diff));
        let rhs = f.sub(x.l[4], f.mul(x.l[1], x.l[3]));
        if lhs == rhs {
            return Ok(Some(ConditionTag::new(id, 2)));
        }
    }
    Ok(r4_condition_from_lambdas(field, &lv)?
        .filter(|t| (3..=5).contains(&t.index))
        .map(|t| ConditionTag { family: id, ..t }))
}

/// The root of `x^4 - x - 1` with the smallest encoding.
pub fn beta_quartic(field: &Field) -> Result<FieldElem> {
    poly::find_root(field, &Poly::from_ints(field, &[-1, -1, 0, 0, 1]))
}

/// The root of `x^6 + x + 2` with the smallest encoding.
pub fn beta_sextic(field: &Field) -> Result<FieldElem> {
    poly::find_root(field, &Poly::from_ints(field, &[2, 1, 0, 0, 0, 0, 1]))
}

/// `beta`-coordinates `(u_0, u_1, u_2, u_3)` of the four p = 3 families as
/// integer combinations of `(u, v)`.
const R4_P3_BETA_FAMILIES: [[(i64, i64); 4]; 4] = [
    // u(1 - b^2 - b^3) + v(b + b^3)
    [(1, 0), (0, 1), (-1, 0), (-1, 1)],
    // u(1 - b^2) + v(b - b^2 - b^3)
    [(1, 0), (0, 1), (-1, -1), (0, -1)],
    // u(1 + b) + v(b^2 - b^3)
    [(1, 0), (1, 0), (0, 1), (0, -1)],
    // u(1 + b^3) + v(b + b^2)
    [(1, 0), (0, 1), (0, 1), (1, 0)],
];

/// Coordinates of a `beta`-family member over F_{3^k}.
pub fn coro_p3_beta_coords(field: &Field, family: usize, u: FieldElem, v: FieldElem) -> Result<[FieldElem; 4]> {
    let spec = R4_P3_BETA_FAMILIES
        .get(family.wrapping_sub(1))
        .ok_or_else(|| Error::Hypothesis(format!("family must be 1..=4, got {family}")))?;
    let f = field;
    Ok(spec.map(|(cu, cv)| f.add(f.mul(f.from_int(cu), u), f.mul(f.from_int(cv), v))))
}

/// The polynomial identities a) and b) in the `beta`-coordinates.
pub fn coro_p3_beta_identities(field: &Field, c: &[FieldElem; 4]) -> (bool, bool) {
    let f = field;
    let m = |terms: &[(i64, [u128; 4])]| {
        terms.iter().fold(FieldElem::ZERO, |acc, (coef, e)| {
            let t = (0..4).fold(f.from_int(*coef), |t, i| f.mul(t, f.pow(c[i], e[i])));
            f.add(acc, t)
        })
    };
    // u1^3 + u3 u2^2 + u3^2 u2 + u1^2 u2 + u2^3 + u1 u3^2 + 2 u0 u2^2 + u3^3
    // + 2 u0^3 + u3 u1 u0
    let cond_a = m(&[
        (1, [0, 3, 0, 0]),
        (1, [0, 0, 2, 1]),
        (1, [0, 0, 1, 2]),
        (1, [0, 2, 1, 0]),
        (1, [0, 0, 3, 0]),
        (1, [0, 1, 0, 2]),
        (2, [1, 0, 2, 0]),
        (1, [0, 0, 0, 3]),
        (2, [3, 0, 0, 0]),
        (1, [1, 1, 0, 1]),
    ]);
    // u0^4 + 2u1^4 + 2u3^4 + 2u2^4 + 2u1 u3^3 + u2 u3^3 + 2 u1 u2^3
    let cond_b = m(&[
        (1, [4, 0, 0, 0]),
        (2, [0, 4, 0, 0]),
        (2, [0, 0, 0, 4]),
        (2, [0, 0, 4, 0]),
        (2, [0, 1, 0, 3]),
        (1, [0, 0, 1, 3]),
        (2, [0, 1, 3, 0]),
    ]);
    (cond_a.is_zero(), cond_b.is_zero())
}

/// `a` for family `1..=4` of the p = 3 `beta`-basis construction over
/// F_{3^{4k}}, `gcd(k, 4) = 1`.
pub fn coro_p3_beta_generate(
    field: &Field,
    beta: FieldElem,
    family: usize,
    u: FieldElem,
    v: FieldElem,
    k: usize,
) -> Result<FieldElem> {
    if field.characteristic() != 3 {
        return Err(Error::WrongCharacteristic { expected: 3, got: field.characteristic() });
    }
    check_r4_shape(field, k)?;
    if nt::gcd(k as u128, 4) != 1 {
        return Err(Error::KNotCoprime { k, m: 4 });
    }
    if u.is_zero() && v.is_zero() {
        return Err(Error::UvBothZero);
    }
    if !field.in_subfield(u, k) || !field.in_subfield(v, k) {
        return Err(Error::NotInSubfield { k });
    }
    let c = coro_p3_beta_coords(field, family, u, v)?;
    if coro_p3_beta_identities(field, &c) != (true, true) {
        return Err(Error::Hypothesis(format!("family {family} coordinates fail identities a) and b)")));
    }
    Ok(combine(field, beta, &c))
}

fn combine(field: &Field, beta: FieldElem, coords: &[FieldElem]) -> FieldElem {
    coords.iter().rev().fold(FieldElem::ZERO, |acc, &c| field.add(field.mul(acc, beta), c))
}

/// Every distinct `a` produced by the four `beta` families, ascending.
pub fn coro_p3_beta_all(field: &Field, beta: FieldElem, k: usize) -> Result<Vec<FieldElem>> {
    let sub = field.subfield_elements(k)?;
    let mut out = Vec::with_capacity(4 * sub.len() * sub.len());
    for family in 1..=4 {
        for &u in &sub {
            for &v in &sub {
                if u.is_zero() && v.is_zero() {
                    continue;
                }
                out.push(coro_p3_beta_generate(field, beta, family, u, v, k)?);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Which form of the p = 5 condition 3) to use: `lambda_2^{-1}` as stated,
/// or `lambda_1^{-1}` as written in the proof (never satisfiable, since
/// the condition also forces `lambda_1 = 0`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum P5Cond3Variant {
    #[default]
    Statement,
    Proof,
}

/// The r = 4, p = 5 theorem: tags the first of conditions 1)-3).
pub fn thm_r4_p5_condition(
    field: &Field,
    a: FieldElem,
    k: usize,
    variant: P5Cond3Variant,
) -> Result<Option<ConditionTag>> {
    let p = field.characteristic();
    if p != 5 {
        return Err(Error::WrongCharacteristic { expected: 5, got: p });
    }
    check_r4_shape(field, k)?;
    if a.is_zero() {
        return Ok(None);
    }
    r4_p5_condition_from_lambdas(field, &lambda_coeffs(field, a, 4, k)?, variant)
}

/// As [`thm_r4_p5_condition`], from precomputed lambdas.
pub fn r4_p5_condition_from_lambdas(
    field: &Field,
    lv: &LambdaVec,
    variant: P5Cond3Variant,
) -> Result<Option<ConditionTag>> {
    let f = field;
    let k = lv.k();
    let id = FamilyId::R4P5;
    let (l1, l2, l3, l4) = (lv.get(1), lv.get(2), lv.get(3), lv.get(4));
    if !l1.is_zero() {
        return Ok(None);
    }
    if l2.is_zero() && l3.is_zero() {
        let m = f.neg(l4);
        if !m.is_zero() && !f.residue_test(m, k, Residue::Fourth)? {
            return Ok(Some(ConditionTag::new(id, 1)));
        }
        return Ok(None);
    }
    if l2.is_zero() {
        return Ok(None);
    }
    // lambda_4 + 3 lambda_3^2 lambda_2^{-1}
    let shifted = f.add(l4, f.mul(f.from_int(3), f.div(f.mul(l3, l3), l2)?));
    let two_l2 = f.mul(f.from_int(2), l2);
    if f.neg(f.mul(l2, l2)) == shifted && !f.residue_test(two_l2, k, Residue::Square)? {
        return Ok(Some(ConditionTag::new(id, 2)));
    }
    if k == 1 && (l2 == f.from_int(2) || l2 == f.from_int(-2)) {
        let holds = match variant {
            P5Cond3Variant::Statement => shifted == f.from_int(4),
            // lambda_1 = 0 here, so lambda_1^{-1} does not exist.
            P5Cond3Variant::Proof => false,
        };
        if holds {
            return Ok(Some(ConditionTag::new(id, 3)));
        }
    }
    Ok(None)
}

/// `a` with `a^{2(5^k-1)} = -1` or `a^{5^k-1} = -1` over F_{5^{4k}}.
pub fn coro_p5_vset(field: &Field, k: usize) -> Result<Vec<FieldElem>> {
    let p = field.characteristic();
    if p != 5 {
        return Err(Error::WrongCharacteristic { expected: 5, got: p });
    }
    check_r4_shape(field, k)?;
    let e = field.p_pow(k) - 1;
    let mut out = field.neg_one_roots(k)?;
    // a^{2e} = -1 means a^2 lies in the coset V, so roots of each element
    // of that coset are collected by factoring x^2 - c.
    for c in field.neg_one_roots(k)? {
        let sq = Poly::new(vec![field.neg(c), FieldElem::ZERO, FieldElem::ONE]);
        out.extend(poly::roots(field, &sq)?);
    }
    out.retain(|&a| field.pow(a, e) == field.neg_one() || field.pow(a, 2 * e) == field.neg_one());
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `beta`-coordinates of the r = 6, p = 3 families, in units of `u`.
pub const R6_P3_FAMILIES: [[i64; 6]; 12] = [
    [0, 0, 1, 1, 1, 1],
    [0, 1, 0, 0, 1, -1],
    [0, 1, 0, -1, -1, 0],
    [1, 0, 1, 0, 1, 1],
    [1, 0, -1, 1, 0, -1],
    [1, 1, 0, -1, 1, 1],
    [1, 1, 1, 0, -1, 0],
    [1, 1, 1, 0, -1, -1],
    [1, 1, -1, 0, -1, -1],
    [1, 1, -1, 1, 0, 0],
    [1, -1, 1, 0, 0, -1],
    [1, -1, -1, -1, 1, -1],
];

/// `beta`-coordinates of the r = 6, p = 5 families, in units of `u`.
pub const R6_P5_FAMILIES: [[i64; 6]; 18] = [
    [1, 0, -1, 3, 0, -3],
    [1, 1, 0, -2, 2, 0],
    [1, 1, 0, -1, 1, 2],
    [1, 1, 1, 1, 1, 2],
    [1, 1, 2, -1, 0, -1],
    [1, 1, -2, 2, -1, 1],
    [1, 1, -1, 0, 3, 3],
    [1, 2, 0, 1, 3, 1],
    [1, 2, 1, 0, 2, 2],
    [1, 2, 1, 2, 1, 1],
    [1, 2, 2, -2, -1, 1],
    [1, 2, -2, -1, 2, 1],
    [1, -2, 2, 1, -2, 2],
    [1, 2, -1, 0, 0, 1],
    [1, -1, -2, 2, -1, 2],
    [0, 0, 1, 1, -2, 0],
    [0, 0, 1, 3, -1, -3],
    [0, 1, 1, 1, 1, 0],
];

pub fn r6_families(p: u64) -> Result<&'static [[i64; 6]]> {
    match p {
        3 => Ok(&R6_P3_FAMILIES),
        5 => Ok(&R6_P5_FAMILIES),
        _ => Err(Error::Hypothesis(format!("r = 6 families exist for p = 3 and p = 5, not p = {p}"))),
    }
}

/// A member of an r = 6 family over F_{p^{6k}}, `gcd(k, 6) = 1`, without
/// the Dickson check.
pub fn r6_family_element(field: &Field, beta: FieldElem, family: usize, u: FieldElem, k: usize) -> Result<FieldElem> {
    let p = field.characteristic();
    let fams = r6_families(p)?;
    let n = field.degree();
    if k == 0 || 6 * k != n {
        return Err(Error::DegreeMismatch { n, r: 6, k });
    }
    if nt::gcd(k as u128, 6) != 1 {
        return Err(Error::KNotCoprime { k, m: 6 });
    }
    if u.is_zero() {
        return Err(Error::UZero);
    }
    if !field.in_subfield(u, k) {
        return Err(Error::NotInSubfield { k });
    }
    let spec = fams
        .get(family.wrapping_sub(1))
        .ok_or_else(|| Error::Hypothesis(format!("family must be 1..={}, got {family}", fams.len())))?;
    let coords: Vec<FieldElem> = spec.iter().map(|&c| field.mul(field.from_int(c), u)).collect();
    Ok(combine(field, beta, &coords))
}

/// As [`r6_family_element`], additionally requiring `h_a` to be a degree-7
/// Dickson polynomial; returns `a` and `eta`.
pub fn coro_r6_generate(
    field: &Field,
    beta: FieldElem,
    family: usize,
    u: FieldElem,
    k: usize,
) -> Result<(FieldElem, FieldElem)> {
    let a = r6_family_element(field, beta, family, u, k)?;
    let lv = lambda_coeffs(field, a, 6, k)?;
    let eta = is_dickson_of_degree(field, &lv, 7)
        .ok_or_else(|| Error::Hypothesis(format!("h_a for family {family} is not a Dickson polynomial")))?;
    Ok((a, eta))
}

/// The `r = p - 1`, `k = 1` family with exponent multiplier `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RtK1 {
    pub p: u64,
    pub t: u128,
    pub d: u128,
}

/// `d = t (p^{p-1} - 1)/(p - 1) + 1` over F_{p^{p-1}}, requiring
/// `gcd((p-1)t + 1, p - 1) = 1`; the coefficients are `a^{p-1} = -1`.
pub fn thm_rt_k1(p: u64, t: u128) -> Result<RtK1> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let r = p as u128 - 1;
    if t == 0 || nt::gcd(r * t + 1, r) != 1 {
        return Err(Error::GcdViolation(format!("gcd({}, {r}) != 1", r * t + 1)));
    }
    let pr = pow_u128(p, r as usize)?;
    let d = t
        .checked_mul((pr - 1) / r)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::CapExceeded("exponent overflows".into()))?;
    Ok(RtK1 { p, t, d })
}

impl RtK1 {
    pub fn r(&self) -> usize {
        self.p as usize - 1
    }

    /// All `a` in F_{p^{p-1}} with `a^{p-1} = -1`.
    pub fn coefficient_set(&self, field: &Field) -> Result<Vec<FieldElem>> {
        if field.characteristic() != self.p || field.degree() != self.r() {
            return Err(Error::DegreeMismatch { n: field.degree(), r: self.r(), k: 1 });
        }
        field.neg_one_roots(1)
    }
}

/// Outcome of checking the `r = p - 1` conjecture at one `(p, k)`.
#[derive(Clone, Debug, Serialize)]
pub struct Conj2Report {
    pub p: u64,
    pub k: usize,
    pub d: String,
    pub gcd_ok: bool,
    pub checked: usize,
    pub failures: Vec<FieldElem>,
    pub reformulated_failures: Vec<FieldElem>,
}

impl Conj2Report {
    pub fn passed(&self) -> bool {
        self.gcd_ok && self.checked > 0 && self.failures.is_empty() && self.reformulated_failures.is_empty()
    }
}

/// For `r = p - 1` and every `a` with `a^{p^k-1} = -1`, checks that
/// `a^{-1} x^d` is a CPP over F_{p^{rk}} through `h_a`, and separately that
/// `x (x^2 - a^2)^{(p-1)/2}` permutes F_{p^k}.
pub fn conj2_verify(field: &Field, k: usize) -> Result<Conj2Report> {
    let p = field.characteristic();
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let r = p as usize - 1;
    let n = field.degree();
    if r * k != n {
        return Err(Error::DegreeMismatch { n, r, k });
    }
    let d = dr_exponent(p, k, r)?;
    let gcd_ok = nt::gcd(d, field.order() - 1) == 1;
    let scanner = HaScanner::new(field, r, k)?;
    let sub = scanner.subfield().to_vec();
    let half = (p as u128 - 1) / 2;
    let mut failures = Vec::new();
    let mut reformulated_failures = Vec::new();
    let v = field.neg_one_roots(k)?;
    for &a in &v {
        if !scanner.check(a)? {
            failures.push(a);
        }
        let a2 = field.mul(a, a);
        let mut images: Vec<FieldElem> = sub
            .iter()
            .map(|&x| field.mul(x, field.pow(field.sub(field.mul(x, x), a2), half)))
            .collect();
        images.sort_unstable();
        if images.windows(2).any(|w| w[0] == w[1]) {
            reformulated_failures.push(a);
        }
    }
    Ok(Conj2Report { p, k, d: d.to_string(), gcd_ok, checked: v.len(), failures, reformulated_failures })
}

/// Witnesses found by the Dickson-polynomial search.
#[derive(Clone, Debug, Serialize)]
pub struct Conj1Report {
    pub p: u64,
    pub r: usize,
    pub k: usize,
    pub scanned: u128,
    pub exhaustive: bool,
    pub witnesses: Vec<FieldElem>,
}

/// Searches F*_{p^{rk}} (or a seeded sample of `budget` elements) for `a`
/// whose `h_a` is a degree-(r+1) Dickson polynomial.
pub fn conj1_search(field: &Field, r: usize, k: usize, budget: Option<u64>) -> Result<Conj1Report> {
    let p = field.characteristic();
    let l = r as u128 + 1;
    if !nt::is_prime(l) || l == p as u128 {
        return Err(Error::Hypothesis(format!("r + 1 = {l} must be a prime other than p")));
    }
    if nt::gcd(r as u128, k as u128) != 1 {
        return Err(Error::Hypothesis(format!("gcd(r, k) = gcd({r}, {k}) != 1")));
    }
    let p2 = (p as u128).checked_mul(p as u128).expect("p < 2^32");
    if nt::gcd(l, p2 - 1) != 1 {
        return Err(Error::Hypothesis(format!("gcd({l}, p^2 - 1) != 1")));
    }
    let n = field.degree();
    if r * k != n {
        return Err(Error::DegreeMismatch { n, r, k });
    }
    let total = field.order() - 1;
    let test = |a: FieldElem| -> Result<bool> {
        let lv = lambda_coeffs(field, a, r, k)?;
        Ok(is_dickson_of_degree(field, &lv, l as u64).is_some())
    };
    let mut witnesses = Vec::new();
    let (scanned, exhaustive) = match budget {
        Some(b) if (b as u128) < total => {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let len = usize::try_from(total).map_err(|_| Error::CapExceeded("sample space".into()))?;
            for i in sample(&mut rng, len, b as usize) {
                let a = field.element(i as u128 + 1)?;
                if test(a)? {
                    witnesses.push(a);
                }
            }
            (b as u128, false)
        }
        _ => {
            for a in field.elements().skip(1) {
                if test(a)? {
                    witnesses.push(a);
                }
            }
            (total, true)
        }
    };
    witnesses.sort_unstable();
    Ok(Conj1Report { p, r, k, scanned, exhaustive, witnesses })
}

/// The three shipped choices of `g` for the multinomial family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GPreset {
    /// `g = 0`, `v = 1`.
    Zero,
    /// `g = x^{d-1}` for the smallest CPP exponent `d >= 2` of F_{p^k}, with
    /// the smallest `v` making `x^d + v x` a permutation.
    Monomial,
    /// `g = D_5(x, 1)/x - v` with `v = 1`, so that `x g(x) + v x = D_5(x, 1)`.
    Dickson,
}

impl GPreset {
    pub const ALL: [GPreset; 3] = [GPreset::Zero, GPreset::Monomial, GPreset::Dickson];

    pub fn as_str(self) -> &'static str {
        match self {
            GPreset::Zero => "zero",
            GPreset::Monomial => "monomial",
            GPreset::Dickson => "dickson",
        }
    }
}

impl FromStr for GPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GPreset::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown g preset `{s}`")))
    }
}

fn permutes(sub: &[FieldElem], map: impl Fn(FieldElem) -> FieldElem) -> bool {
    let mut images: Vec<FieldElem> = sub.iter().map(|&x| map(x)).collect();
    images.sort_unstable();
    images.windows(2).all(|w| w[0] != w[1])
}

/// `(g, v)` for a preset over F_{p^k}, or `None` when the preset does not
/// apply (the Dickson preset needs `p != 5` and `gcd(5, p^{2k} - 1) = 1`).
pub fn multinomial_preset(field: &Field, preset: GPreset, k: usize) -> Result<Option<(SubfieldPoly, FieldElem)>> {
    let sub = field.subfield_elements(k)?;
    match preset {
        GPreset::Zero => Ok(Some((SubfieldPoly::new(field, Vec::new(), k)?, field.one()))),
        GPreset::Monomial => {
            let q = field.p_pow(k);
            for d in 2..=q {
                if nt::gcd(d, q - 1) != 1 {
                    continue;
                }
                let v = sub.iter().copied().filter(|v| !v.is_zero()).find(|&v| {
                    permutes(&sub, |x| field.add(field.pow(x, d), field.mul(v, x)))
                });
                if let Some(v) = v {
                    let g = SubfieldPoly::new(field, Poly::monomial(FieldElem::ONE, d as usize - 1).coeffs().to_vec(), k)?;
                    return Ok(Some((g, v)));
                }
            }
            Ok(None)
        }
        GPreset::Dickson => {
            let p = field.characteristic();
            let q2 = field.p_pow(k).checked_mul(field.p_pow(k)).ok_or_else(|| Error::CapExceeded("p^2k".into()))?;
            if p == 5 || nt::gcd(5, q2 - 1) != 1 {
                return Ok(None);
            }
            let v = field.one();
            let d5 = dickson_poly(field, 5, field.one(), k)?;
            // D_5 has zero constant term; g = D_5/x - v.
            let mut g: Vec<FieldElem> = d5.coeffs()[1..].to_vec();
            g[0] = field.sub(g[0], v);
            Ok(Some((SubfieldPoly::new(field, g, k)?, v)))
        }
    }
}

/// Parameters of one multinomial map.
#[derive(Clone, Debug)]
pub struct Multinomial {
    pub g: SubfieldPoly,
    pub v: FieldElem,
    pub a: FieldElem,
    pub k: usize,
}

impl Multinomial {
    /// Validates the hypotheses: `v != 0` in F_{p^k}, `x g(x) + v x`
    /// permutes F_{p^k}, `a` in F_{p^k} minus `{0, -1}`, and
    /// `gcd(p - 1, r) = gcd(r, p) = 1` for `r = n/k`.
    pub fn new(field: &Field, g: SubfieldPoly, v: FieldElem, a: FieldElem, k: usize) -> Result<Self> {
        field.check_divisor(k)?;
        if g.k() != k {
            return Err(Error::NotInSubfield { k });
        }
        if v.is_zero() {
            return Err(Error::VZero);
        }
        if !field.in_subfield(v, k) || !field.in_subfield(a, k) {
            return Err(Error::NotInSubfield { k });
        }
        let p = field.characteristic() as u128;
        let r = (field.degree() / k) as u128;
        if nt::gcd(p - 1, r) != 1 || nt::gcd(r, p) != 1 {
            return Err(Error::GcdViolation(format!("need gcd(p-1, r) = gcd(r, p) = 1 with p = {p}, r = {r}")));
        }
        if a.is_zero() || a == field.neg_one() {
            return Err(Error::AExcluded);
        }
        let sub = field.subfield_elements(k)?;
        if !permutes(&sub, |x| field.add(field.mul(x, g.eval(field, x)), field.mul(v, x))) {
            return Err(Error::Hypothesis("x g(x) + v x does not permute the subfield".into()));
        }
        Ok(Multinomial { g, v, a, k })
    }

    /// `f(x) = x((a/v) g(T) + T^{p-1}) + (p-1) x^p + a x` with
    /// `T = Tr_{p^k}^{p^n}(x)`.
    pub fn eval(&self, field: &Field, x: FieldElem) -> FieldElem {
        let p = field.characteristic() as u128;
        let t = field.trace(x, self.k).expect("k divides n");
        let a_over_v = field.div(self.a, self.v).expect("v != 0");
        let inner = field.add(field.mul(a_over_v, self.g.eval(field, t)), field.pow(t, p - 1));
        let xp = field.pow(x, p);
        let pm1 = field.from_int(p as i64 - 1);
        field.add(field.add(field.mul(x, inner), field.mul(pm1, xp)), field.mul(self.a, x))
    }

    /// Whether `x g(x) + v(a+1)/a x` also permutes F_{p^k}. `f(x) + x` is the
    /// same map with `a + 1` in place of `a` but the factor `a/v` kept, so this
    /// is what makes it a permutation by the same argument.
    pub fn shifted_hypothesis_holds(&self, field: &Field) -> bool {
        let Ok(sub) = field.subfield_elements(self.k) else { return false };
        let Ok(ratio) = field.div(field.add(self.a, field.one()), self.a) else { return false };
        let w = field.mul(self.v, ratio);
        permutes(&sub, |x| field.add(field.mul(x, self.g.eval(field, x)), field.mul(w, x)))
    }

    /// `Tr(f(x)) = (a/v)(T g(T) + v T)`.
    pub fn trace_identity_holds(&self, field: &Field, x: FieldElem) -> bool {
        let t = field.trace(x, self.k).expect("k divides n");
        let lhs = field.trace(self.eval(field, x), self.k).expect("k divides n");
        let a_over_v = field.div(self.a, self.v).expect("v != 0");
        let rhs = field.mul(a_over_v, field.add(field.mul(t, self.g.eval(field, t)), field.mul(self.v, t)));
        lhs == rhs
    }
}

/// The multinomial map as a [`FieldMap`].
pub fn multinomial_map<'f>(field: &'f Field, m: Multinomial) -> FieldMap<'f> {
    FieldMap::new(field, move |x| m.eval(field, x))
}

/// `F_{p^k}` minus `{0, -1}`, ascending.
pub fn multinomial_admissible_a(field: &Field, k: usize) -> Result<Vec<FieldElem>> {
    let minus_one = field.neg_one();
    Ok(field.subfield_elements(k)?.into_iter().filter(|&a| !a.is_zero() && a != minus_one).collect())
}

#[cfg(test)]
mod tests;
