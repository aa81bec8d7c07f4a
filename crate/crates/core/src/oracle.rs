//! Ground-truth permutation checks and the three permutation criteria used
//! to cross-validate them: additive character sums, and the two
//! multiplicative-coset reductions for maps of the shape `x^l g(x^m)`.

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, LogTables, Poly, ZECH_ZERO};
use crate::nt;

/// Largest field on which exact character sums are attempted.
pub const CHARSUM_MAX_ORDER: u128 = 1 << 14;

/// Largest field that [`is_permutation`] will enumerate.
pub const ENUMERATION_MAX_ORDER: u128 = 1 << 32;

type EvalFn<'f> = dyn Fn(FieldElem) -> FieldElem + Send + Sync + 'f;

/// A total map F_{p^n} -> F_{p^n}.
pub struct FieldMap<'f> {
    field: &'f Field,
    eval: Box<EvalFn<'f>>,
}

impl<'f> FieldMap<'f> {
    pub fn new(field: &'f Field, eval: impl Fn(FieldElem) -> FieldElem + Send + Sync + 'f) -> Self {
        FieldMap { field, eval: Box::new(eval) }
    }

    /// The map given by evaluating a polynomial.
    pub fn from_poly(field: &'f Field, poly: Poly) -> Self {
        FieldMap::new(field, move |x| poly.eval(field, x))
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    #[inline]
    pub fn apply(&self, x: FieldElem) -> FieldElem {
        (self.eval)(x)
    }

    /// `x -> f(x) + x`.
    pub fn plus_identity(&self) -> FieldMap<'_> {
        let field = self.field;
        FieldMap::new(field, move |x| field.add(self.apply(x), x))
    }
}

/// A fixed-size bit set used to detect collisions.
#[derive(Clone, Debug)]
pub struct OccupancySet {
    words: Vec<u64>,
}

impl OccupancySet {
    pub fn new(size: usize) -> Self {
        OccupancySet { words: vec![0; size.div_ceil(64)] }
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    /// Marks `i`; returns false if it was already marked.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }
}

/// Whether `f` is a bijection, by occupancy with early exit on collision.
///
/// # Panics
///
/// If the field has more than 2^32 elements.
pub fn is_permutation(f: &FieldMap<'_>) -> bool {
    let q = f.field.order();
    assert!(q <= ENUMERATION_MAX_ORDER, "field of order {q} is too large to enumerate");
    let mut seen = OccupancySet::new(q as usize);
    f.field.elements().all(|x| seen.insert(f.apply(x).encoding() as usize))
}

/// Both `f` and `f + id` are permutations.
pub fn is_cpp(f: &FieldMap<'_>) -> bool {
    is_permutation(f) && is_permutation(&f.plus_identity())
}

/// Direct bijectivity scans of `x -> x^d + a x` on log-tabled fields.
///
/// Works entirely in the log domain: for `x = g^j` the two terms have logs
/// `d j` and `log a + j`, and their sum is one Zech lookup away.
pub struct BinomialKernel<'f> {
    tables: &'f LogTables,
    dlog: Vec<u32>,
    seen: OccupancySet,
}

impl<'f> BinomialKernel<'f> {
    /// `None` when the field has no log tables.
    pub fn new(field: &'f Field, d: u128) -> Option<Self> {
        let tables = field.tables()?;
        let m = tables.group_order() as u64;
        let dm = (d % m as u128) as u64;
        let dlog = (0..m).map(|j| (dm * j % m) as u32).collect();
        Some(BinomialKernel { tables, dlog, seen: OccupancySet::new(m as usize + 1) })
    }

    /// Whether `x^d + a x` permutes the field.
    pub fn is_permutation(&mut self, a: FieldElem) -> bool {
        let t = self.tables;
        let m = t.group_order();
        let zech = t.zech_table();
        self.seen.clear();
        // Slot 0 is the zero element, slot i + 1 is g^i.
        self.seen.insert(0);
        if a.is_zero() {
            return self.dlog.iter().all(|&t1| self.seen.insert(t1 as usize + 1));
        }
        let la = t.log(a.encoding() as u32);
        let mut t2 = la;
        for &t1 in &self.dlog {
            let diff = if t2 >= t1 { t2 - t1 } else { t2 + m - t1 };
            let z = zech[diff as usize];
            let slot = if z == ZECH_ZERO {
                0
            } else {
                let s = t1 + z;
                (if s >= m { s - m } else { s }) as usize + 1
            };
            if !self.seen.insert(slot) {
                return false;
            }
            t2 += 1;
            if t2 == m {
                t2 = 0;
            }
        }
        true
    }
}

/// Whether `a^{-1} x^d` is a CPP: `gcd(d, p^n - 1) = 1` and `x^d + a x` is a
/// permutation (the latter is `a^{-1}x^d + x` up to scaling by `a`).
pub fn is_cpp_exponent_pair(field: &Field, d: u128, a: FieldElem) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    if nt::gcd(d, field.order() - 1) != 1 {
        return Ok(false);
    }
    if let Some(mut kernel) = BinomialKernel::new(field, d) {
        return Ok(kernel.is_permutation(a));
    }
    let f = FieldMap::new(field, move |x| field.add(field.pow(x, d), field.mul(a, x)));
    Ok(is_permutation(&f))
}

/// Absolute traces of every element, indexed by encoding.
pub fn trace_table(field: &Field) -> Vec<u8> {
    field.elements().map(|x| field.abs_trace(x) as u8).collect()
}

/// `sum_x w^{Tr(alpha f(x))}` for one `alpha`, given precomputed values.
fn char_sum(field: &Field, traces: &[u8], values: &[FieldElem], alpha: FieldElem) -> CycInt {
    let mut counts = vec![0i64; field.characteristic() as usize];
    for &v in values {
        counts[traces[field.mul(alpha, v).encoding() as usize] as usize] += 1;
    }
    CycInt::from_counts(counts)
}

/// The additive-character criterion: `f` permutes F_{p^n} iff
/// `sum_x w^{Tr(alpha f(x))} = 0` for every nonzero `alpha`.
pub fn char_sum_pp_check(f: &FieldMap<'_>) -> Result<bool> {
    let field = f.field();
    if field.order() > CHARSUM_MAX_ORDER {
        return Err(Error::FieldTooLargeForCharSum { order: field.order() });
    }
    let traces = trace_table(field);
    let values: Vec<FieldElem> = field.elements().map(|x| f.apply(x)).collect();
    Ok(field.elements().skip(1).all(|alpha| char_sum(field, &traces, &values, alpha).is_zero()))
}

/// Multiplicative criterion on `mu_s`: `x^l g(x^{(q-1)/s})` permutes F_q iff
/// `gcd(l, (q-1)/s) = 1` and `x^l g(x)^{(q-1)/s}` permutes `mu_s`.
pub fn zieve_mu_check(field: &Field, l: u128, g: &Poly, s: u128) -> Result<bool> {
    let m = field.order() - 1;
    if s == 0 || !m.is_multiple_of(s) {
        return Err(Error::NotGroupDivisor { s });
    }
    let e = m / s;
    if nt::gcd(l, e) != 1 {
        return Ok(false);
    }
    let mu = field.roots_of_unity(s)?;
    let mut images: Vec<FieldElem> = Vec::with_capacity(mu.len());
    for &x in &mu {
        let y = field.mul(field.pow(x, l), field.pow(g.eval(field, x), e));
        if y.is_zero() || field.pow(y, s) != FieldElem::ONE {
            return Ok(false);
        }
        images.push(y);
    }
    images.sort_unstable();
    Ok(images.windows(2).all(|w| w[0] != w[1]))
}

/// Subfield criterion: with `n = rk`, `x^l g(x^{(q-1)/(p^k-1)})` permutes
/// F_q iff `gcd(l, (q-1)/(p^k-1)) = 1` and
/// `x^l g(x) g^{(p^k)}(x) ... g^{(p^{(r-1)k})}(x)` permutes F_{p^k}, where
/// `g^{(p^j)}` raises every coefficient of `g` to the `p^j`.
pub fn zieve_subfield_check(field: &Field, l: u128, g: &Poly, k: usize) -> Result<bool> {
    let sub = field.subfield_elements(k)?;
    let r = field.degree() / k;
    let e = (field.order() - 1) / (field.p_pow(k) - 1);
    if nt::gcd(l, e) != 1 {
        return Ok(false);
    }
    let twists: Vec<Poly> = (0..r).map(|i| g.map_coeffs(|c| field.frobenius(c, i * k))).collect();
    let mut images = Vec::with_capacity(sub.len());
    for &x in &sub {
        let y = twists.iter().fold(field.pow(x, l), |acc, t| field.mul(acc, t.eval(field, x)));
        if !field.in_subfield(y, k) {
            return Ok(false);
        }
        images.push(y);
    }
    images.sort_unstable();
    Ok(images.windows(2).all(|w| w[0] != w[1]))
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn f9() -> Field {
        Field::new(3, 2, None).unwrap()
    }

    fn monomial_map(field: &Field, d: u128) -> FieldMap<'_> {
        FieldMap::new(field, move |x| field.pow(x, d))
    }

    fn random_poly(field: &Field, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
        let deg = rng.gen_range(0..=max_deg);
        Poly::new((0..=deg).map(|_| field.element(rng.gen_range(0..field.order())).unwrap()).collect())
    }

    #[test]
    fn permutation_examples() {
        let f = f9();
        assert!(is_permutation(&FieldMap::new(&f, |x| x)));
        let f7 = Field::prime(7).unwrap();
        assert!(!is_permutation(&monomial_map(&f7, 3)));
        let f3 = Field::prime(3).unwrap();
        let quintic = FieldMap::new(&f3, |x| f3.add(f3.pow(x, 5), x));
        assert!(is_permutation(&quintic));
    }

    #[test]
    fn cpp_examples() {
        let f = &f9();
        let i = f.from_coeffs(&[0, 1]).unwrap();
        let a_inv = f.inv(i).unwrap();
        let mono = FieldMap::new(f, move |x| f.mul(a_inv, f.pow(x, 5)));
        assert!(is_cpp(&mono));
        assert!(is_cpp(&FieldMap::new(f, |x| x)));
        let f4 = Field::new(2, 2, None).unwrap();
        assert!(!is_cpp(&FieldMap::new(&f4, |x| x)));
    }

    #[test]
    fn exponent_pair_examples() {
        let f = f9();
        let i = f.from_coeffs(&[0, 1]).unwrap();
        assert!(is_cpp_exponent_pair(&f, 5, i).unwrap());
        assert_eq!(is_cpp_exponent_pair(&f, 3, f.zero()).unwrap_err(), Error::ZeroCoefficient);
        // gcd(2, 8) != 1
        assert!(!is_cpp_exponent_pair(&f, 2, i).unwrap());
    }

    #[test]
    fn kernel_matches_generic_map() {
        for (p, n) in [(3, 4), (5, 2), (2, 5), (7, 2)] {
            let f = &Field::new(p, n, None).unwrap();
            for d in [2u128, 3, 5, 7, 11, 41] {
                let mut kernel = BinomialKernel::new(f, d).unwrap();
                for a in f.elements() {
                    let direct = FieldMap::new(f, move |x| f.add(f.pow(x, d), f.mul(a, x)));
                    assert_eq!(kernel.is_permutation(a), is_permutation(&direct), "p={p} n={n} d={d} a={a}");
                }
            }
        }
    }

    #[test]
    fn char_sum_examples() {
        let f = f9();
        assert!(char_sum_pp_check(&FieldMap::new(&f, |x| x)).unwrap());
        let traces = trace_table(&f);
        let values: Vec<FieldElem> = f.elements().collect();
        for alpha in f.elements().skip(1) {
            assert!(char_sum(&f, &traces, &values, alpha).is_zero());
        }
        let f7 = Field::prime(7).unwrap();
        assert!(!char_sum_pp_check(&monomial_map(&f7, 3)).unwrap());
        let big = Field::new(2, 15, None).unwrap();
        assert_eq!(
            char_sum_pp_check(&FieldMap::new(&big, |x| x)).unwrap_err(),
            Error::FieldTooLargeForCharSum { order: 1 << 15 }
        );
    }

    #[test]
    fn char_sum_agrees_with_bitmap_on_binomials() {
        for (p, n, d) in [(3, 2, 5u128), (5, 2, 7), (3, 4, 41), (3, 6, 365)] {
            let f = &Field::new(p, n, None).unwrap();
            for a in f.elements() {
                let map = FieldMap::new(f, move |x| f.add(f.pow(x, d), f.mul(a, x)));
                assert_eq!(char_sum_pp_check(&map).unwrap(), is_permutation(&map), "p={p} n={n} a={a}");
            }
        }
    }

    #[test]
    fn char_sum_agrees_on_random_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, n) in [(3, 2), (5, 2), (3, 3), (2, 4)] {
            let f = Field::new(p, n, None).unwrap();
            let q = f.order() as usize;
            for trial in 0..25 {
                // Half random tables, half random permutations.
                let table: Vec<FieldElem> = if trial % 2 == 0 {
                    (0..q).map(|_| f.element(rng.gen_range(0..q as u128)).unwrap()).collect()
                } else {
                    let mut perm: Vec<FieldElem> = f.elements().collect();
                    for i in (1..q).rev() {
                        perm.swap(i, rng.gen_range(0..=i));
                    }
                    perm
                };
                let map = FieldMap::new(&f, move |x| table[x.encoding() as usize]);
                assert_eq!(char_sum_pp_check(&map).unwrap(), is_permutation(&map));
            }
        }
    }

    #[test]
    fn scaling_preserves_permutation() {
        let f = &Field::new(5, 2, None).unwrap();
        let c = f.element(7).unwrap();
        for d in [3u128, 5, 7] {
            let base = monomial_map(f, d);
            let scaled = FieldMap::new(f, |x| f.mul(c, base.apply(f.mul(c, x))));
            assert_eq!(is_permutation(&base), is_permutation(&scaled));
        }
    }

    #[test]
    fn zieve_mu_examples() {
        // p = 3, k = 1, n = 2, i = 1: x^d + a x = x (x^{(p^k+1)(p^i-1)/2} + a)
        // with g(x) = x + a and s = p^k - 1 = 2.
        let f = f9();
        let a = f.from_coeffs(&[0, 1]).unwrap();
        let g = Poly::new(vec![a, f.one()]);
        assert!(zieve_mu_check(&f, 1, &g, 2).unwrap());
        // Constant g: x -> c x on a cyclic group.
        let c = Poly::constant(f.from_int(2));
        for s in [1u128, 2, 4, 8] {
            assert!(zieve_mu_check(&f, 1, &c, s).unwrap());
        }
        assert_eq!(zieve_mu_check(&f, 1, &c, 3).unwrap_err(), Error::NotGroupDivisor { s: 3 });
    }

    fn composite(field: &Field, l: u128, g: Poly, m: u128) -> FieldMap<'_> {
        FieldMap::new(field, move |x| field.mul(field.pow(x, l), g.eval(field, field.pow(x, m))))
    }

    #[test]
    fn zieve_mu_matches_composite_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, n) in [(3, 2), (5, 2)] {
            let f = Field::new(p, n, None).unwrap();
            let m = f.order() - 1;
            let divisors: Vec<u128> = (1..=m).filter(|s| m.is_multiple_of(*s)).collect();
            for _ in 0..20 {
                let l = rng.gen_range(1..8u128);
                let s = divisors[rng.gen_range(0..divisors.len())];
                let g = random_poly(&f, &mut rng, 3);
                let direct = is_permutation(&composite(&f, l, g.clone(), m / s));
                assert_eq!(zieve_mu_check(&f, l, &g, s).unwrap(), direct, "p={p} l={l} s={s} g={g:?}");
            }
        }
    }

    #[test]
    fn zieve_subfield_examples() {
        // g = 1 reduces to the gcd condition on l.
        let f = Field::new(3, 4, None).unwrap();
        let one = Poly::constant(f.one());
        for l in 1..12u128 {
            assert_eq!(zieve_subfield_check(&f, l, &one, 1).unwrap(), nt::gcd(l, 40) == 1 && l % 2 == 1);
        }
        assert_eq!(zieve_subfield_check(&f, 1, &one, 3).unwrap_err(), Error::NotDivisor { k: 3, n: 4 });
    }

    #[test]
    fn zieve_subfield_matches_composite_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f = Field::new(3, 4, None).unwrap();
        let m = (f.order() - 1) / 2;
        let mut positives = 0;
        for _ in 0..20 {
            let l = rng.gen_range(1..6u128);
            let g = random_poly(&f, &mut rng, 2);
            let direct = is_permutation(&composite(&f, l, g.clone(), m));
            positives += usize::from(direct);
            assert_eq!(zieve_subfield_check(&f, l, &g, 1).unwrap(), direct, "l={l} g={g:?}");
        }
        // x + a, the shape behind h_a, for every a.
        for a in f.elements() {
            let g = Poly::new(vec![a, f.one()]);
            let direct = is_permutation(&composite(&f, 1, g.clone(), m));
            positives += usize::from(direct);
            assert_eq!(zieve_subfield_check(&f, 1, &g, 1).unwrap(), direct);
        }
        assert!(positives > 0);
    }
}
