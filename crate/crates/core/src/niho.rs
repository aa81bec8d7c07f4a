//! Niho-exponent machinery over F_{p^{2k}}: the unit circle, the set `V`,
//! the solution count `N(a)` and the resulting Walsh values.

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::nt;
use crate::oracle::{FieldMap, CHARSUM_MAX_ORDER};

/// A field of even degree `n = 2k`, with `q = p^k` and conjugation `x^q`.
#[derive(Clone, Copy, Debug)]
pub struct NihoCtx<'f> {
    field: &'f Field,
    k: usize,
    q: u128,
}

impl<'f> NihoCtx<'f> {
    pub fn new(field: &'f Field) -> Result<Self> {
        let n = field.degree();
        if !n.is_multiple_of(2) {
            return Err(Error::OddDegree { n });
        }
        let k = n / 2;
        Ok(NihoCtx { field, k, q: field.p_pow(k) })
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u128 {
        self.q
    }

    pub fn conj(&self, x: FieldElem) -> FieldElem {
        self.field.frobenius(x, self.k)
    }

    /// The `q + 1` elements with `x^{q+1} = 1`, as powers of a generator.
    pub fn unit_circle(&self) -> Result<Vec<FieldElem>> {
        self.field.roots_of_unity(self.q + 1)
    }

    /// All `a` with `a^{q-1} = -1`.
    pub fn v_set(&self) -> Result<Vec<FieldElem>> {
        self.field.neg_one_roots(self.k)
    }

    /// Number of `lambda` in the unit circle with
    /// `lambda^s + lambda^{1-s} + conj(a) lambda + a = 0`.
    pub fn count_n(&self, a: FieldElem, s: u128) -> Result<u64> {
        let f = self.field;
        let a_bar = self.conj(a);
        // lambda^{q+1} = 1, so exponents live modulo q + 1.
        let e = self.q + 1;
        let s_mod = s % e;
        let t = (1 + e - s_mod) % e;
        let count = self
            .unit_circle()?
            .into_iter()
            .filter(|&l| {
                let lhs = f.add(f.add(f.pow(l, s_mod), f.pow(l, t)), f.add(f.mul(a_bar, l), a));
                lhs.is_zero()
            })
            .count();
        Ok(count as u64)
    }

    /// `(N(a) - 1) q`, the Walsh value of `Tr(x^d)` at `a` for
    /// `d = s(q - 1) + 1`.
    pub fn walsh_niho(&self, a: FieldElem, s: u128) -> Result<i128> {
        Ok((self.count_n(a, s)? as i128 - 1) * self.q as i128)
    }

    /// The `s` with `d p^j = s(q - 1) + 1 mod (p^n - 1)` for some `j`, trying
    /// `j = n - 1` first and then `j = 0, 1, ...`. Multiplying the exponent by
    /// `p^j` leaves `Tr(x^d)` unchanged.
    pub fn niho_s(&self, d: u128) -> Option<u128> {
        let f = self.field;
        let m = f.order() - 1;
        let n = f.degree();
        let candidates = std::iter::once(n - 1).chain(0..n - 1);
        for j in candidates {
            let dj = nt::mul_mod(d % m, f.p_pow(j) % m, m);
            let shifted = (dj + m - 1) % m;
            if shifted.is_multiple_of(self.q - 1) {
                return Some(shifted / (self.q - 1));
            }
        }
        None
    }
}

/// `sum_x w^{Tr(g(x) + a x)}`, exactly.
pub fn direct_walsh(g: &FieldMap<'_>, a: FieldElem) -> Result<CycInt> {
    let f = g.field();
    if f.order() > CHARSUM_MAX_ORDER {
        return Err(Error::FieldTooLargeForCharSum { order: f.order() });
    }
    let mut counts = vec![0i64; f.characteristic() as usize];
    for x in f.elements() {
        let y = f.add(g.apply(x), f.mul(a, x));
        counts[f.abs_trace(y) as usize] += 1;
    }
    Ok(CycInt::from_counts(counts))
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn unit_circle_and_v() {
        let f9 = Field::new(3, 2, None).unwrap();
        let ctx = NihoCtx::new(&f9).unwrap();
        let u = ctx.unit_circle().unwrap();
        assert_eq!(u.len(), 4);
        assert!(u.contains(&FieldElem::ONE));
        assert!(u.iter().all(|&l| f9.pow(l, 4) == FieldElem::ONE));
        let i = f9.from_coeffs(&[0, 1]).unwrap();
        let mut expected = vec![i, f9.neg(i)];
        expected.sort_unstable();
        assert_eq!(ctx.v_set().unwrap(), expected);

        for (p, n, v) in [(3, 4, 8), (5, 4, 24)] {
            let f = Field::new(p, n, None).unwrap();
            let ctx = NihoCtx::new(&f).unwrap();
            assert_eq!(ctx.v_set().unwrap().len(), v);
            assert_eq!(ctx.unit_circle().unwrap().len() as u128, ctx.q() + 1);
        }
        let f27 = Field::new(3, 3, None).unwrap();
        assert_eq!(NihoCtx::new(&f27).unwrap_err(), Error::OddDegree { n: 3 });
    }

    #[test]
    fn count_n_by_brute_force() {
        let f = Field::new(3, 2, None).unwrap();
        let ctx = NihoCtx::new(&f).unwrap();
        let u: Vec<FieldElem> = f.elements().filter(|&l| !l.is_zero() && f.pow(l, 4) == f.one()).collect();
        for s in [0u128, 1, 2, 3, 7] {
            for a in f.elements() {
                let expected = u
                    .iter()
                    .filter(|&&l| {
                        let inv = f.inv(l).unwrap();
                        let t1 = f.pow(l, s);
                        let t2 = f.mul(l, f.pow(inv, s));
                        f.add(f.add(t1, t2), f.add(f.mul(ctx.conj(a), l), a)).is_zero()
                    })
                    .count() as u64;
                assert_eq!(ctx.count_n(a, s).unwrap(), expected);
            }
        }
    }

    #[test]
    fn n_is_one_on_v_for_p3() {
        for k in 1..=3 {
            let f = Field::new(3, 2 * k, None).unwrap();
            let ctx = NihoCtx::new(&f).unwrap();
            let s = f.p_pow(2 * k - 1);
            for a in ctx.v_set().unwrap() {
                assert_eq!(ctx.count_n(a, s).unwrap(), 1, "k={k}");
                assert_eq!(ctx.walsh_niho(a, s).unwrap(), 0);
            }
        }
    }

    #[test]
    fn s_for_three_k_plus_two() {
        for k in 1..=3 {
            let f = Field::new(3, 2 * k, None).unwrap();
            let ctx = NihoCtx::new(&f).unwrap();
            let d = 3u128.pow(k as u32) + 2;
            assert_eq!(ctx.niho_s(d), Some(f.p_pow(2 * k - 1) % (ctx.q() + 1)));
        }
    }

    #[test]
    fn direct_walsh_trivial_cases() {
        let f = Field::new(3, 2, None).unwrap();
        let zero = FieldMap::new(&f, |_| FieldElem::ZERO);
        assert_eq!(direct_walsh(&zero, FieldElem::ZERO).unwrap().as_integer(), Some(9));
        for a in f.elements().skip(1) {
            assert!(direct_walsh(&zero, a).unwrap().is_zero());
        }
    }

    fn check_walsh_formula(p: u64) {
        let f = &Field::new(p, 2, None).unwrap();
        let ctx = NihoCtx::new(f).unwrap();
        for s in 0..=ctx.q() {
            let d = s * (ctx.q() - 1) + 1;
            let g = FieldMap::new(f, move |x| f.pow(x, d));
            for a in f.elements() {
                let w = direct_walsh(&g, a).unwrap();
                assert_eq!(w.as_integer().map(i128::from), Some(ctx.walsh_niho(a, s).unwrap()), "p={p} s={s} a={a}");
            }
        }
    }

    #[test]
    fn walsh_formula_exhaustive_f9() {
        check_walsh_formula(3);
    }

    #[test]
    fn walsh_formula_exhaustive_f25() {
        check_walsh_formula(5);
    }

    #[test]
    fn parseval_on_random_maps() {
        let f = Field::new(3, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..3 {
            let table: Vec<FieldElem> = (0..9).map(|_| f.element(rng.gen_range(0..9)).unwrap()).collect();
            let g = FieldMap::new(&f, move |x| table[x.encoding() as usize]);
            let mut total = CycInt::zero(3);
            for a in f.elements() {
                total = &total + &direct_walsh(&g, a).unwrap().norm_sq();
            }
            assert_eq!(total.as_integer(), Some(81));
        }
    }
}
