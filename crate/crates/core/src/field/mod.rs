//! Finite fields F_{p^n} in a polynomial basis.
//!
//! Elements are stored by their base-p encoding `sum coeffs[i] * p^i`, which
//! doubles as the deterministic ordering used everywhere in reports. Small
//! fields (p^n <= 2^22) carry discrete-log, antilog and Zech tables so that
//! every operation is a handful of lookups; larger fields fall back to
//! schoolbook polynomial arithmetic modulo the defining polynomial.
//!
//! Subfields are never materialised as separate objects: F_{p^k} is the set
//! of fixed points of `x -> x^{p^k}` inside the ambient field.

pub mod linalg;
pub mod poly;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt;

pub use poly::Poly;

/// Largest field order that gets log tables.
pub const TABLE_MAX_ORDER: u128 = 1 << 22;

/// Sentinel in the Zech table: `1 + g^i = 0`.
pub const ZECH_ZERO: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem(u128);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Base-p integer encoding of the coefficient vector.
    #[inline]
    pub const fn encoding(self) -> u128 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Wraps an encoding without a range check; callers must know it is
    /// below the field order.
    #[inline]
    pub const fn from_encoding_unchecked(enc: u128) -> Self {
        FieldElem(enc)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Table,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residue {
    Square,
    Fourth,
}

impl Residue {
    pub fn exponent(self) -> u128 {
        match self {
            Residue::Square => 2,
            Residue::Fourth => 4,
        }
    }
}

/// Discrete-log tables over a primitive element `g`.
///
/// `exp[i] = g^i` (as an encoding), `log[exp[i]] = i`, and
/// `zech[i] = log(1 + g^i)` or [`ZECH_ZERO`].
#[derive(Clone, Debug)]
pub struct LogTables {
    generator: FieldElem,
    m: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl LogTables {
    fn build(field: &Field) -> Result<Self> {
        let m = field.order - 1;
        let generator = field.find_primitive_generic()?;
        let gd = field.digits(generator);
        let mut exp = Vec::with_capacity(m as usize);
        let mut cur = field.digits(FieldElem::ONE);
        for _ in 0..m {
            exp.push(field.encode(&cur) as u32);
            cur = field.mul_digits(&cur, &gd);
        }
        let mut log = vec![u32::MAX; field.order as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let p = field.p as u32;
        let zech = exp
            .iter()
            .map(|&e| {
                let low = e % p;
                let shifted = e - low + (low + 1) % p;
                if shifted == 0 {
                    ZECH_ZERO
                } else {
                    log[shifted as usize]
                }
            })
            .collect();
        Ok(LogTables { generator, m: m as u32, exp, log, zech })
    }

    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    /// Order of the multiplicative group, `p^n - 1`.
    #[inline]
    pub fn group_order(&self) -> u32 {
        self.m
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    pub fn zech_table(&self) -> &[u32] {
        &self.zech
    }

    #[inline]
    pub fn log(&self, x: u32) -> u32 {
        self.log[x as usize]
    }

    #[inline]
    pub fn exp(&self, i: u32) -> u32 {
        self.exp[i as usize]
    }

    #[inline]
    fn wrap(&self, s: u32) -> u32 {
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.wrap(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let diff = if lb >= la { lb - la } else { lb + self.m - la };
        let z = self.zech[diff as usize];
        if z == ZECH_ZERO {
            0
        } else {
            self.exp[self.wrap(la + z) as usize]
        }
    }
}

/// A finite field F_{p^n} = F_p[x]/(modulus).
#[derive(Clone, Debug)]
pub struct Field {
    p: u64,
    n: usize,
    order: u128,
    modulus: Vec<u64>,
    pow_p: Vec<u128>,
    tables: Option<LogTables>,
}

impl Field {
    /// Builds F_{p^n}, picking the table backend when `p^n <= 2^22`.
    ///
    /// Without an explicit modulus the lexicographically least monic
    /// irreducible polynomial (comparing `c_0` first) is used.
    pub fn new(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<Self> {
        let order = checked_order(p, n)?;
        let backend = if order <= TABLE_MAX_ORDER { Backend::Table } else { Backend::Generic };
        Self::with_backend(p, n, modulus, backend)
    }

    pub fn with_backend(p: u64, n: usize, modulus: Option<&[u64]>, backend: Backend) -> Result<Self> {
        let order = checked_order(p, n)?;
        let modulus = match modulus {
            Some(m) => {
                validate_modulus(p, n, m)?;
                m.to_vec()
            }
            None => default_modulus(p, n)?,
        };
        let pow_p = (0..=n as u32).map(|i| (p as u128).pow(i)).collect();
        let mut field = Field { p, n, order, modulus, pow_p, tables: None };
        if backend == Backend::Table {
            if order > TABLE_MAX_ORDER {
                return Err(Error::FieldTooLarge { p, n });
            }
            field.tables = Some(LogTables::build(&field)?);
        }
        Ok(field)
    }

    /// The prime field Z_p, with modulus `x`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, Some(&[0, 1]))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `p^n`.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Ascending coefficients `(c_0, ..., c_{n-1}, 1)`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn backend(&self) -> Backend {
        if self.tables.is_some() {
            Backend::Table
        } else {
            Backend::Generic
        }
    }

    pub fn tables(&self) -> Option<&LogTables> {
        self.tables.as_ref()
    }

    /// The primitive element backing the log tables, if any.
    pub fn generator(&self) -> Option<FieldElem> {
        self.tables.as_ref().map(LogTables::generator)
    }

    /// `p^i` for `0 <= i <= n`.
    pub fn p_pow(&self, i: usize) -> u128 {
        self.pow_p[i]
    }

    /// Order of the subfield F_{p^k}.
    pub fn subfield_order(&self, k: usize) -> Result<u128> {
        self.check_divisor(k)?;
        Ok(self.pow_p[k])
    }

    pub fn check_divisor(&self, k: usize) -> Result<()> {
        if k == 0 || !self.n.is_multiple_of(k) {
            Err(Error::NotDivisor { k, n: self.n })
        } else {
            Ok(())
        }
    }

    // ---- elements -------------------------------------------------------

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    pub fn neg_one(&self) -> FieldElem {
        FieldElem((self.p - 1) as u128)
    }

    pub fn element(&self, enc: u128) -> Result<FieldElem> {
        if enc < self.order {
            Ok(FieldElem(enc))
        } else {
            Err(Error::InvalidElement(enc))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.n {
            return Err(Error::Parse(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.n
            )));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::CoefficientOutOfRange { value: bad, p: self.p });
        }
        Ok(FieldElem(self.encode(coeffs)))
    }

    /// Coefficient vector of length `n`.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u64> {
        self.digits(x)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> FieldElem {
        FieldElem(nt::reduce_signed(v as i128, self.p as u128))
    }

    /// The class of the indeterminate `x` (the canonical root of the modulus).
    pub fn gen_x(&self) -> FieldElem {
        if self.n == 1 {
            self.neg(FieldElem(self.modulus[0] as u128))
        } else {
            FieldElem(self.p as u128)
        }
    }

    /// All elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order).map(FieldElem)
    }

    // ---- arithmetic -----------------------------------------------------

    pub fn arith(&self, op: ArithOp, x: FieldElem, y: FieldElem) -> Result<FieldElem> {
        Ok(match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Sub => self.sub(x, y),
            ArithOp::Mul => self.mul(x, y),
            ArithOp::Neg => self.neg(x),
            ArithOp::Inv => self.inv(x)?,
        })
    }

    #[inline]
    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => FieldElem(t.add(x.0 as u32, y.0 as u32) as u128),
            None => {
                let a = self.digits(x);
                let b = self.digits(y);
                let s: Vec<u64> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
                FieldElem(self.encode(&s))
            }
        }
    }

    #[inline]
    pub fn neg(&self, x: FieldElem) -> FieldElem {
        if x.is_zero() || self.p == 2 {
            return x;
        }
        match &self.tables {
            Some(t) => {
                let half = t.m / 2;
                FieldElem(t.exp(t.wrap(t.log(x.0 as u32) + half)) as u128)
            }
            None => {
                let a: Vec<u64> = self.digits(x).iter().map(|&u| (self.p - u) % self.p).collect();
                FieldElem(self.encode(&a))
            }
        }
    }

    #[inline]
    pub fn sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => FieldElem(t.mul(x.0 as u32, y.0 as u32) as u128),
            None => {
                if x.is_zero() || y.is_zero() {
                    return FieldElem::ZERO;
                }
                FieldElem(self.encode(&self.mul_digits(&self.digits(x), &self.digits(y))))
            }
        }
    }

    pub fn inv(&self, x: FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(Error::DivideByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log(x.0 as u32);
                FieldElem(t.exp(if l == 0 { 0 } else { t.m - l }) as u128)
            }
            None => FieldElem(self.encode(&self.inv_digits(&self.digits(x)))),
        })
    }

    pub fn div(&self, x: FieldElem, y: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e`, with `0^0 = 1`. Exponents are reduced modulo `p^n - 1`.
    pub fn pow(&self, x: FieldElem, e: u128) -> FieldElem {
        if x.is_zero() {
            return if e == 0 { FieldElem::ONE } else { FieldElem::ZERO };
        }
        let m = self.order - 1;
        let e = e % m;
        match &self.tables {
            Some(t) => {
                let l = t.log(x.0 as u32) as u128;
                FieldElem(t.exp(((l * e) % m) as u32) as u128)
            }
            None => FieldElem(self.encode(&self.pow_digits(&self.digits(x), e))),
        }
    }

    /// `x^e` for a signed exponent; `x` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, x: FieldElem, e: i128) -> Result<FieldElem> {
        if e >= 0 {
            return Ok(self.pow(x, e as u128));
        }
        if x.is_zero() {
            return Err(Error::DivideByZero);
        }
        let m = self.order - 1;
        Ok(self.pow(x, nt::reduce_signed(e, m)))
    }

    /// `x^{p^j}`.
    pub fn frobenius(&self, x: FieldElem, j: usize) -> FieldElem {
        let j = j % self.n;
        if j == 0 || x.is_zero() {
            return x;
        }
        self.pow(x, self.pow_p[j])
    }

    /// `Tr_{p^k}^{p^n}(x) = sum_{i < n/k} x^{p^{ik}}`.
    pub fn trace(&self, x: FieldElem, k: usize) -> Result<FieldElem> {
        self.check_divisor(k)?;
        let mut acc = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..self.n / k {
            acc = self.add(acc, y);
            y = self.frobenius(y, k);
        }
        Ok(acc)
    }

    /// Absolute trace as an integer in `[0, p)`.
    pub fn abs_trace(&self, x: FieldElem) -> u64 {
        self.trace(x, 1).expect("1 divides n").0 as u64
    }

    /// Norm down to F_{p^k}: `x^{(p^n-1)/(p^k-1)}`.
    pub fn norm(&self, x: FieldElem, k: usize) -> Result<FieldElem> {
        self.check_divisor(k)?;
        Ok(self.pow(x, (self.order - 1) / (self.pow_p[k] - 1)))
    }

    pub fn in_subfield(&self, x: FieldElem, k: usize) -> bool {
        self.frobenius(x, k) == x
    }

    /// An F_p-basis of F_{p^k}, from the kernel of `Frob^k - id`.
    pub fn subfield_basis(&self, k: usize) -> Result<Vec<FieldElem>> {
        self.check_divisor(k)?;
        if k == self.n {
            return Ok((0..self.n).map(|i| FieldElem(self.pow_p[i])).collect());
        }
        // Column i holds the image of x^i.
        let images: Vec<Vec<u64>> = (0..self.n)
            .map(|i| self.digits(self.frobenius(FieldElem(self.pow_p[i]), k)))
            .collect();
        let p = self.p;
        let mat: Vec<Vec<u64>> = (0..self.n)
            .map(|row| {
                (0..self.n)
                    .map(|col| {
                        let v = images[col][row];
                        let id = u64::from(row == col);
                        (v + p - id) % p
                    })
                    .collect()
            })
            .collect();
        let basis: Vec<FieldElem> = linalg::kernel(&mat, p).iter().map(|v| FieldElem(self.encode(v))).collect();
        debug_assert_eq!(basis.len(), k);
        Ok(basis)
    }

    /// The `p^k` elements of F_{p^k}, ascending by encoding.
    pub fn subfield_elements(&self, k: usize) -> Result<Vec<FieldElem>> {
        let basis = self.subfield_basis(k)?;
        let size = self.pow_p[k];
        if size > 1 << 26 {
            return Err(Error::CapExceeded(format!("subfield of order {size}")));
        }
        let basis_digits: Vec<Vec<u64>> = basis.iter().map(|&b| self.digits(b)).collect();
        let mut out = Vec::with_capacity(size as usize);
        let mut combo = vec![0u64; k];
        loop {
            let mut acc = vec![0u64; self.n];
            for (c, bd) in combo.iter().zip(&basis_digits) {
                if *c != 0 {
                    for (a, b) in acc.iter_mut().zip(bd) {
                        *a = (*a + c * b) % self.p;
                    }
                }
            }
            out.push(FieldElem(self.encode(&acc)));
            // odometer increment
            let mut i = 0;
            while i < k {
                combo[i] += 1;
                if combo[i] < self.p {
                    break;
                }
                combo[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Whether the nonzero subfield element `x` is a square (fourth power)
    /// inside F_{p^k}: `x^{(p^k-1)/g} = 1` with `g = gcd(m, p^k-1)`.
    pub fn residue_test(&self, x: FieldElem, k: usize, power: Residue) -> Result<bool> {
        self.check_divisor(k)?;
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !self.in_subfield(x, k) {
            return Err(Error::NotInSubfield { k });
        }
        let qk1 = self.pow_p[k] - 1;
        let g = nt::gcd(power.exponent(), qk1);
        Ok(self.pow(x, qk1 / g) == FieldElem::ONE)
    }

    /// All `a` with `a^{p^k-1} = -1`, ascending. For odd `p` this is a coset
    /// of F_{p^k}^* of size `p^k - 1` (empty when `(p^n-1)/(p^k-1)` is odd);
    /// for `p = 2` it is the literal solution set F_{2^k}^*.
    pub fn neg_one_roots(&self, k: usize) -> Result<Vec<FieldElem>> {
        let sub = self.subfield_elements(k)?;
        let nonzero = sub.into_iter().filter(|x| !x.is_zero());
        if self.p == 2 {
            return Ok(nonzero.collect());
        }
        let m = self.order - 1;
        let cofactor = m / (self.pow_p[k] - 1);
        if cofactor % 2 == 1 {
            return Ok(Vec::new());
        }
        let nonsquare = self
            .elements()
            .skip(1)
            .find(|&z| self.pow(z, m / 2) == self.neg_one())
            .expect("odd-order field has non-squares");
        let c = self.pow(nonsquare, cofactor / 2);
        debug_assert_eq!(self.pow(c, self.pow_p[k] - 1), self.neg_one());
        let mut out: Vec<FieldElem> = nonzero.map(|s| self.mul(c, s)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// An element of multiplicative order exactly `s`, for `s | p^n - 1`.
    pub fn element_of_order(&self, s: u128) -> Result<FieldElem> {
        let m = self.order - 1;
        if s == 0 || !m.is_multiple_of(s) {
            return Err(Error::NotGroupDivisor { s });
        }
        if let Some(t) = &self.tables {
            return Ok(self.pow(t.generator, m / s));
        }
        let primes = nt::prime_divisors(s)?;
        for z in self.elements().skip(1) {
            let w = self.pow(z, m / s);
            if primes.iter().all(|&l| self.pow(w, s / l) != FieldElem::ONE) {
                return Ok(w);
            }
        }
        unreachable!("cyclic group has elements of every order dividing it")
    }

    /// `[1, w, w^2, ..., w^{s-1}]` for `w` of order `s`.
    pub fn roots_of_unity(&self, s: u128) -> Result<Vec<FieldElem>> {
        if s > 1 << 28 {
            return Err(Error::CapExceeded(format!("{s} roots of unity")));
        }
        let w = self.element_of_order(s)?;
        let mut out = Vec::with_capacity(s as usize);
        let mut cur = FieldElem::ONE;
        for _ in 0..s {
            out.push(cur);
            cur = self.mul(cur, w);
        }
        Ok(out)
    }

    /// Coordinates of `x` in the basis `1, beta, ..., beta^{m-1}` over
    /// F_{p^k}, where `m * k = n`. Fails if the powers of `beta` are not a
    /// basis.
    pub fn basis_coordinates(&self, beta: FieldElem, k: usize, x: FieldElem) -> Result<Vec<FieldElem>> {
        self.check_divisor(k)?;
        let m = self.n / k;
        let sub_basis = self.subfield_basis(k)?;
        let mut columns = Vec::with_capacity(self.n);
        let mut bp = FieldElem::ONE;
        for _ in 0..m {
            for &s in &sub_basis {
                columns.push(self.digits(self.mul(s, bp)));
            }
            bp = self.mul(bp, beta);
        }
        let mat: Vec<Vec<u64>> = (0..self.n).map(|row| columns.iter().map(|c| c[row]).collect()).collect();
        let sol = linalg::solve(&mat, &self.digits(x), self.p)
            .ok_or_else(|| Error::Hypothesis("powers of beta do not form a basis".into()))?;
        Ok(sol
            .chunks(k)
            .map(|chunk| {
                chunk
                    .iter()
                    .zip(&sub_basis)
                    .fold(FieldElem::ZERO, |acc, (&c, &s)| self.add(acc, self.mul(self.from_int(c as i64), s)))
            })
            .collect())
    }

    // ---- digit-level arithmetic (generic backend) ----------------------

    fn digits(&self, x: FieldElem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n);
        if let Ok(mut v) = u64::try_from(x.0) {
            for _ in 0..self.n {
                out.push(v % self.p);
                v /= self.p;
            }
        } else {
            let mut v = x.0;
            let p = self.p as u128;
            for _ in 0..self.n {
                out.push((v % p) as u64);
                v /= p;
            }
        }
        out
    }

    fn encode(&self, d: &[u64]) -> u128 {
        d.iter().rev().fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    fn mul_digits(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (n, p) = (self.n, self.p);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        for t in (n..2 * n - 1).rev() {
            let c = prod[t];
            if c != 0 {
                let f = p - c;
                for i in 0..n {
                    prod[t - n + i] = (prod[t - n + i] + f * self.modulus[i]) % p;
                }
                prod[t] = 0;
            }
        }
        prod.truncate(n);
        prod
    }

    fn pow_digits(&self, base: &[u64], mut e: u128) -> Vec<u64> {
        let mut acc = self.digits(FieldElem::ONE);
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_digits(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul_digits(&b, &b);
            }
        }
        acc
    }

    /// Extended Euclid in Z_p[x] against the modulus.
    fn inv_digits(&self, a: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut r0 = zp::trim(self.modulus.clone());
        let mut r1 = zp::trim(a.to_vec());
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = zp::divrem(&r0, &r1, p);
            let s2 = zp::sub(&s0, &zp::mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        let c_inv = nt::inv_mod_prime(r0[0], p).expect("gcd with irreducible modulus is a unit");
        let mut out: Vec<u64> = s0.iter().map(|&c| c * c_inv % p).collect();
        out.resize(self.n, 0);
        out
    }

    fn find_primitive_generic(&self) -> Result<FieldElem> {
        let m = self.order - 1;
        if m == 1 {
            return Ok(FieldElem::ONE);
        }
        let primes = nt::prime_divisors(m)?;
        let one = self.digits(FieldElem::ONE);
        for cand in 2..self.order {
            let d = self.digits(FieldElem(cand));
            if primes.iter().all(|&l| self.pow_digits(&d, m / l) != one) {
                return Ok(FieldElem(cand));
            }
        }
        Err(Error::Hypothesis("no primitive element found".into()))
    }
}

fn checked_order(p: u64, n: usize) -> Result<u128> {
    if !nt::is_prime(p as u128) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if p >= 1 << 32 {
        return Err(Error::FieldTooLarge { p, n });
    }
    let order = u32::try_from(n)
        .ok()
        .and_then(|n32| (p as u128).checked_pow(n32))
        .filter(|&q| q - 1 < 1u128 << 127)
        .ok_or(Error::FieldTooLarge { p, n })?;
    Ok(order)
}

fn validate_modulus(p: u64, n: usize, m: &[u64]) -> Result<()> {
    if m.len() != n + 1 {
        return Err(Error::ModulusDegreeMismatch { expected: n, got: m.len().saturating_sub(1) });
    }
    if let Some(&bad) = m.iter().find(|&&c| c >= p) {
        return Err(Error::CoefficientOutOfRange { value: bad, p });
    }
    if m[n] != 1 {
        return Err(Error::ModulusNotMonic);
    }
    if n >= 2 && !is_irreducible_over_prime(p, m)? {
        return Err(Error::ModulusReducible { p });
    }
    Ok(())
}

fn is_irreducible_over_prime(p: u64, m: &[u64]) -> Result<bool> {
    let fp = Field::prime(p)?;
    let poly = Poly::new(m.iter().map(|&c| FieldElem(c as u128)).collect());
    poly::is_irreducible(&fp, &poly, 1)
}

/// Lexicographically least monic irreducible polynomial of degree `n`,
/// comparing the ascending sequence `(c_0, c_1, ..., c_{n-1})`.
fn default_modulus(p: u64, n: usize) -> Result<Vec<u64>> {
    if n == 1 {
        return Ok(vec![0, 1]);
    }
    // c_{n-1} is the fastest-moving digit; c_0 = 0 is always reducible.
    let mut tail = vec![0u64; n];
    tail[0] = 1;
    loop {
        let mut m = tail.clone();
        m.push(1);
        if is_irreducible_over_prime(p, &m)? {
            return Ok(m);
        }
        let mut i = n - 1;
        loop {
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
            if i == 0 {
                unreachable!("irreducible polynomials exist in every degree");
            }
            i -= 1;
        }
    }
}

/// Polynomial helpers over Z_p on raw ascending coefficient vectors.
mod zp {
    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = crate::nt::inv_mod_prime(b[db], p).expect("nonzero leading coefficient");
        if r.len() < b.len() {
            return (vec![], trim(r));
        }
        let mut q = vec![0u64; r.len() - db];
        for t in (db..r.len()).rev() {
            let c = r[t] * lead_inv % p;
            if c == 0 {
                continue;
            }
            q[t - db] = c;
            for (i, &bi) in b.iter().enumerate() {
                let idx = t - db + i;
                r[idx] = (r[idx] + p - c * bi % p) % p;
            }
        }
        (trim(q), trim(r))
    }
}
