use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ha::{ha_pp_check, lambda_coeffs};
use crate::oracle::{is_cpp, is_cpp_exponent_pair};

fn brute_cpp_set(field: &Field, d: u128) -> Vec<FieldElem> {
    field.elements().skip(1).filter(|&a| is_cpp_exponent_pair(field, d, a).unwrap()).collect()
}

#[test]
fn exponents() {
    assert_eq!(niho2_exponent(3, 1, 1).unwrap(), 5);
    assert_eq!(niho2_exponent(3, 2, 1).unwrap(), 11);
    assert_eq!(niho2_exponent(5, 1, 2).unwrap(), 73);
    assert_eq!(p3k2_exponent(3).unwrap(), 29);
    assert_eq!(niho2_exponent(2, 1, 1).unwrap_err(), Error::EvenCharacteristic);
    assert!(matches!(niho2_exponent(3, 1, 3), Err(Error::Hypothesis(_))));
    assert_eq!(dr_exponent(3, 1, 4).unwrap(), 41);
    assert_eq!(dr_exponent(3, 3, 4).unwrap(), 20441);
    assert_eq!(dr_exponent(5, 2, 4).unwrap(), 16277);
    assert!(matches!(dr_exponent(3, 1, 3), Err(Error::GcdViolation(_))));
}

#[test]
fn niho2_sets_pass() {
    for (p, k, i) in [(3, 1, 1), (3, 2, 1), (5, 1, 2), (3, 2, 3), (5, 2, 1)] {
        let f = Field::new(p, 2 * k, None).unwrap();
        let d = niho2_exponent(p, k, i).unwrap();
        let ctx = NihoCtx::new(&f).unwrap();
        let v = niho2_coefficient_set(&ctx).unwrap();
        assert_eq!(v.len() as u128, f.p_pow(k) - 1);
        for a in v {
            assert!(is_cpp_exponent_pair(&f, d, a).unwrap(), "p={p} k={k} i={i}");
        }
    }
}

#[test]
fn family_id_round_trip() {
    for id in FamilyId::ALL {
        assert_eq!(id.as_str().parse::<FamilyId>().unwrap(), id);
    }
    assert!("r5".parse::<FamilyId>().is_err());
}

fn r4_tagged(f: &Field, k: usize) -> Vec<(FieldElem, ConditionTag)> {
    f.elements().filter_map(|a| thm_r4_condition(f, a, k).unwrap().map(|t| (a, t))).collect()
}

#[test]
fn r4_f81_is_complete() {
    let f = Field::new(3, 4, None).unwrap();
    let tagged = r4_tagged(&f, 1);
    let set: Vec<FieldElem> = tagged.iter().map(|t| t.0).collect();
    assert_eq!(set, brute_cpp_set(&f, 41));
    assert_eq!(set.len(), 38);
    assert_eq!(thm_r4_condition(&f, f.zero(), 1).unwrap(), None);
}

#[test]
fn r4_f3_8_all_condition_three() {
    let f = Field::new(3, 8, None).unwrap();
    let tagged = r4_tagged(&f, 2);
    assert_eq!(tagged.len(), 64);
    assert!(tagged.iter().all(|(_, t)| t.index == 3));
    let set: Vec<FieldElem> = tagged.iter().map(|t| t.0).collect();
    assert_eq!(set, brute_cpp_set(&f, dr_exponent(3, 2, 4).unwrap()));
}

#[test]
fn r4_small_primes_sound_and_complete() {
    for p in [7, 13] {
        let f = Field::new(p, 4, None).unwrap();
        let d = dr_exponent(p, 1, 4).unwrap();
        let set: Vec<FieldElem> = r4_tagged(&f, 1).into_iter().map(|t| t.0).collect();
        assert_eq!(set, brute_cpp_set(&f, d), "p={p}");
    }
}

#[test]
fn r4_rejects_bad_context() {
    let f5 = Field::new(5, 4, None).unwrap();
    assert_eq!(thm_r4_condition(&f5, f5.one(), 1).unwrap_err(), Error::CharExcluded(5));
    let f11 = Field::new(11, 4, None).unwrap();
    assert!(matches!(thm_r4_condition(&f11, f11.one(), 1), Err(Error::GcdViolation(_))));
    let f = Field::new(3, 4, None).unwrap();
    assert!(matches!(thm_r4_condition(&f, f.one(), 2), Err(Error::DegreeMismatch { .. })));
}

#[test]
fn p3_corollary_matches_theorem() {
    let f = Field::new(3, 4, None).unwrap();
    let thm: Vec<FieldElem> = r4_tagged(&f, 1).into_iter().map(|t| t.0).collect();
    let coro: Vec<FieldElem> =
        f.elements().filter(|&a| coro_p3n4k_condition(&f, a, 1).unwrap().is_some()).collect();
    assert_eq!(coro, thm);

    let f8 = Field::new(3, 8, None).unwrap();
    assert!(f8
        .elements()
        .all(|a| coro_p3n4k_condition(&f8, a, 2).unwrap().is_none_or(|t| t.index != 1)));
    let f25 = Field::new(5, 2, None).unwrap();
    assert!(matches!(coro_p3n4k_condition(&f25, f25.one(), 1), Err(Error::WrongCharacteristic { .. })));
}

#[test]
fn beta_families_k1() {
    let f = Field::new(3, 4, None).unwrap();
    let beta = beta_quartic(&f).unwrap();
    let one = f.one();
    let a = coro_p3_beta_generate(&f, beta, 1, one, f.zero(), 1).unwrap();
    let b2 = f.mul(beta, beta);
    assert_eq!(a, f.sub(f.sub(one, b2), f.mul(b2, beta)));
    assert!(is_cpp_exponent_pair(&f, 41, a).unwrap());
    let tag = coro_p3n4k_condition(&f, a, 1).unwrap().unwrap();
    assert_eq!(tag.index, 2);

    let all = coro_p3_beta_all(&f, beta, 1).unwrap();
    assert_eq!(all.len(), 28);
    let cpp = brute_cpp_set(&f, 41);
    assert!(all.iter().all(|a| cpp.contains(a)));
    for family in 1..=4 {
        for u in f.subfield_elements(1).unwrap() {
            for v in f.subfield_elements(1).unwrap() {
                if u.is_zero() && v.is_zero() {
                    continue;
                }
                let c = coro_p3_beta_coords(&f, family, u, v).unwrap();
                assert_eq!(coro_p3_beta_identities(&f, &c), (true, true), "family {family}");
            }
        }
    }
    assert_eq!(coro_p3_beta_generate(&f, beta, 1, f.zero(), f.zero(), 1).unwrap_err(), Error::UvBothZero);
}

#[test]
fn beta_generate_k_not_coprime() {
    let f = Field::new(3, 8, None).unwrap();
    let beta = beta_quartic(&f).unwrap();
    assert_eq!(
        coro_p3_beta_generate(&f, beta, 1, f.one(), f.zero(), 2).unwrap_err(),
        Error::KNotCoprime { k: 2, m: 4 }
    );
}

#[test]
fn p5_theorem_f625() {
    let f = Field::new(5, 4, None).unwrap();
    let d = dr_exponent(5, 1, 4).unwrap();
    let cpp = brute_cpp_set(&f, d);
    let tagged = |variant| -> Vec<FieldElem> {
        f.elements().filter(|&a| thm_r4_p5_condition(&f, a, 1, variant).unwrap().is_some()).collect()
    };
    assert_eq!(tagged(P5Cond3Variant::Statement), cpp);
    assert_eq!(cpp.len(), 60);
    // The lambda_1^{-1} form never fires, losing the 16 condition-3 values.
    assert_eq!(tagged(P5Cond3Variant::Proof).len(), 44);
    let vset = coro_p5_vset(&f, 1).unwrap();
    assert_eq!(vset.len(), 12);
    let e = f.p_pow(1) - 1;
    for a in vset {
        assert!(cpp.contains(&a));
        if f.pow(a, 2 * e) == f.neg_one() {
            let t = thm_r4_p5_condition(&f, a, 1, P5Cond3Variant::Statement).unwrap().unwrap();
            assert_eq!(t.index, 1);
        }
    }
    let f3 = Field::new(3, 4, None).unwrap();
    assert!(matches!(
        thm_r4_p5_condition(&f3, f3.one(), 1, P5Cond3Variant::Statement),
        Err(Error::WrongCharacteristic { .. })
    ));
}

#[test]
fn r6_p3_families() {
    let f = Field::new(3, 6, Some(&[2, 1, 0, 0, 0, 0, 1])).unwrap();
    let beta = beta_sextic(&f).unwrap();
    let d = dr_exponent(3, 1, 6).unwrap();
    assert_eq!(d, 365);
    for family in 1..=R6_P3_FAMILIES.len() {
        for u in [f.one(), f.neg_one()] {
            let (a, _) = coro_r6_generate(&f, beta, family, u, 1).unwrap();
            assert!(is_cpp_exponent_pair(&f, d, a).unwrap(), "family {family}");
        }
    }
    assert_eq!(coro_r6_generate(&f, beta, 1, f.zero(), 1).unwrap_err(), Error::UZero);
}

#[test]
fn r6_p5_first_family() {
    let f = Field::new(5, 6, Some(&[2, 1, 0, 0, 0, 0, 1])).unwrap();
    let beta = beta_sextic(&f).unwrap();
    let d = dr_exponent(5, 1, 6).unwrap();
    assert_eq!(d, 3907);
    let a = r6_family_element(&f, beta, 1, f.from_int(2), 1).unwrap();
    assert!(is_cpp_exponent_pair(&f, d, a).unwrap());
    // x^7 + 2x^6 + x^5 + x^2 + 2x is x^3 after a shift as a map of F_5, which
    // no D_7(x, eta) equals.
    let lv = lambda_coeffs(&f, a, 6, 1).unwrap();
    assert_eq!(lv.entries(), &[2, 1, 0, 0, 1, 2].map(|v| f.from_int(v))[..]);
    assert!(matches!(coro_r6_generate(&f, beta, 1, f.from_int(2), 1), Err(Error::Hypothesis(_))));
    let (b, eta) = coro_r6_generate(&f, beta, 16, f.one(), 1).unwrap();
    assert!(is_cpp_exponent_pair(&f, d, b).unwrap());
    assert!(!eta.is_zero());
}

#[test]
fn rt_k1_examples() {
    assert_eq!(thm_rt_k1(5, 1).unwrap().d, 157);
    assert_eq!(thm_rt_k1(5, 1).unwrap().d, dr_exponent(5, 1, 4).unwrap());
    assert_eq!(thm_rt_k1(7, 1).unwrap().d, 19609);
    assert!(matches!(thm_rt_k1(5, 0), Err(Error::GcdViolation(_))));
    let rt = thm_rt_k1(5, 2).unwrap();
    assert_eq!(rt.d, 313);
    let f = Field::new(5, 4, None).unwrap();
    let set = rt.coefficient_set(&f).unwrap();
    assert_eq!(set.len(), 4);
    for a in set {
        assert!(is_cpp_exponent_pair(&f, rt.d, a).unwrap());
    }
}

#[test]
fn conj2_small() {
    for (p, k) in [(3, 1), (3, 2), (5, 1), (7, 1)] {
        let f = Field::new(p, (p as usize - 1) * k, None).unwrap();
        let rep = conj2_verify(&f, k).unwrap();
        assert!(rep.passed(), "p={p} k={k}: {rep:?}");
        assert_eq!(rep.checked as u128, f.p_pow(k) - 1);
    }
}

#[test]
fn conj1_p3_r4_contains_beta_families() {
    let f = Field::new(3, 4, Some(&[2, 2, 0, 0, 1])).unwrap();
    let rep = conj1_search(&f, 4, 1, None).unwrap();
    assert!(rep.exhaustive);
    let beta = beta_quartic(&f).unwrap();
    for a in coro_p3_beta_all(&f, beta, 1).unwrap() {
        assert!(rep.witnesses.contains(&a));
    }
    let sampled = conj1_search(&f, 4, 1, Some(10)).unwrap();
    assert_eq!(sampled.scanned, 10);
    assert!(sampled.witnesses.iter().all(|a| rep.witnesses.contains(a)));
    assert!(matches!(conj1_search(&f, 3, 1, None), Err(Error::Hypothesis(_))));
}

#[test]
fn multinomial_examples() {
    let f = &Field::new(2, 6, None).unwrap();
    let (g, v) = multinomial_preset(f, GPreset::Zero, 2).unwrap().unwrap();
    for a in multinomial_admissible_a(f, 2).unwrap() {
        let m = Multinomial::new(f, g.clone(), v, a, 2).unwrap();
        assert!(is_cpp(&multinomial_map(f, m)));
    }

    let f = &Field::new(3, 5, None).unwrap();
    let (g, v) = multinomial_preset(f, GPreset::Zero, 1).unwrap().unwrap();
    let m = Multinomial::new(f, g, v, f.one(), 1).unwrap();
    let direct = FieldMap::new(f, |x| {
        let t = f.trace(x, 1).unwrap();
        let terms = [f.mul(x, f.mul(t, t)), f.mul(f.from_int(2), f.pow(x, 3)), x];
        terms.into_iter().fold(FieldElem::ZERO, |acc, y| f.add(acc, y))
    });
    assert!(f.elements().all(|x| m.eval(f, x) == direct.apply(x)));
    assert!(is_cpp(&multinomial_map(f, m)));

    let f2 = Field::new(3, 2, None).unwrap();
    let (g, v) = multinomial_preset(&f2, GPreset::Zero, 1).unwrap().unwrap();
    assert!(matches!(Multinomial::new(&f2, g.clone(), v, f2.one(), 1), Err(Error::GcdViolation(_))));
    assert_eq!(Multinomial::new(f, g.clone(), FieldElem::ZERO, f.one(), 1).unwrap_err(), Error::VZero);
    let (g, v) = multinomial_preset(f, GPreset::Zero, 1).unwrap().unwrap();
    assert_eq!(Multinomial::new(f, g, v, f.neg_one(), 1).unwrap_err(), Error::AExcluded);
}

#[test]
fn multinomial_zero_and_dickson_presets_are_cpps() {
    for (p, n, k) in [(3, 5, 1), (3, 7, 1), (2, 6, 2), (2, 10, 2), (3, 10, 2)] {
        let f = &Field::new(p, n, None).unwrap();
        for preset in [GPreset::Zero, GPreset::Dickson] {
            let Some((g, v)) = multinomial_preset(f, preset, k).unwrap() else {
                assert_eq!(preset, GPreset::Dickson);
                continue;
            };
            for a in multinomial_admissible_a(f, k).unwrap() {
                let m = Multinomial::new(f, g.clone(), v, a, k).unwrap();
                assert!(m.shifted_hypothesis_holds(f));
                assert!(is_cpp(&multinomial_map(f, m)), "p={p} n={n} {preset:?}");
            }
        }
    }
}

#[test]
fn multinomial_monomial_preset_fails_shifted_hypothesis() {
    // f + x has the same shape with v replaced by v(a+1)/a, and x^d + c x
    // cannot permute F_3 for both c = v and c = 2v.
    let f = &Field::new(3, 5, None).unwrap();
    let (g, v) = multinomial_preset(f, GPreset::Monomial, 1).unwrap().unwrap();
    let m = Multinomial::new(f, g, v, f.one(), 1).unwrap();
    assert!(!m.shifted_hypothesis_holds(f));
    let map = multinomial_map(f, m);
    assert!(crate::oracle::is_permutation(&map));
    assert!(!is_cpp(&map));
}

#[test]
fn multinomial_trace_depends_only_on_trace() {
    let f = Field::new(3, 5, None).unwrap();
    let (g, v) = multinomial_preset(&f, GPreset::Dickson, 1).unwrap().unwrap();
    let m = Multinomial::new(&f, g, v, f.one(), 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut by_trace: std::collections::HashMap<FieldElem, FieldElem> = Default::default();
    for _ in 0..1000 {
        let x = f.element(rng.gen_range(0..f.order())).unwrap();
        assert!(m.trace_identity_holds(&f, x));
        let t = f.trace(x, 1).unwrap();
        let tf = f.trace(m.eval(&f, x), 1).unwrap();
        assert_eq!(*by_trace.entry(t).or_insert(tf), tf);
    }
}

#[test]
fn theorem_tags_imply_ha_pp() {
    let f = Field::new(3, 4, None).unwrap();
    for (a, _) in r4_tagged(&f, 1) {
        assert!(ha_pp_check(&f, a, 4, 1).unwrap());
    }
}
