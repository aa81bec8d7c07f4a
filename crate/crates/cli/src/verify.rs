//! `verify`: run one family's generator or predicate and check every
//! coefficient it produces.

use std::collections::BTreeMap;

use cppforge_core::families::{
    beta_quartic, beta_sextic, coro_p3_beta_generate, coro_p3n4k_condition, coro_p5_vset, dr_exponent,
    multinomial_admissible_a, multinomial_map, multinomial_preset, niho2_coefficient_set, niho2_exponent,
    r6_families, r6_family_element, thm_r4_condition, thm_r4_p5_condition, thm_rt_k1, ConditionTag, FamilyId,
    GPreset, Multinomial, P5Cond3Variant,
};
use cppforge_core::field::TABLE_MAX_ORDER;
use cppforge_core::ha::{ha_pp_check, is_dickson_of_degree, lambda_coeffs};
use cppforge_core::niho::NihoCtx;
use cppforge_core::nt;
use cppforge_core::oracle::{is_cpp, is_cpp_exponent_pair};
use cppforge_core::{Field, FieldElem};
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::report::{build_beta_field, build_field, FieldInfo, BETA_QUARTIC, BETA_SEXTIC, VERSION};

#[derive(Clone, Debug, Default)]
pub struct VerifyParams {
    pub p: Option<u64>,
    pub k: Option<usize>,
    pub r: Option<usize>,
    pub i: Option<usize>,
    pub t: Option<u128>,
    pub preset: Option<GPreset>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub label: String,
    pub a: u128,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub family: FamilyId,
    pub field: FieldInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    pub tested: usize,
    pub failures: usize,
    pub instances: Vec<Instance>,
    pub version: &'static str,
}

impl VerifyReport {
    fn new(family: FamilyId, field: FieldInfo, d: Option<u128>, instances: Vec<Instance>) -> Self {
        let failures = instances.iter().filter(|i| !i.passed).count();
        VerifyReport { family, field, d: d.map(|d| d.to_string()), tested: instances.len(), failures, instances, version: VERSION }
    }

    pub fn passed(&self) -> bool {
        self.tested > 0 && self.failures == 0
    }
}

fn need<T: Copy>(v: Option<T>, name: &str, family: FamilyId) -> Result<T> {
    v.ok_or_else(|| HarnessError::Usage(format!("family {family} needs --{name}")))
}

/// `a^{-1} x^d` is a CPP, by direct scan on tabled fields and through `h_a`
/// otherwise.
fn cpp_check(field: &Field, d: u128, a: FieldElem, rk: Option<(usize, usize)>) -> Result<bool> {
    match rk {
        Some((r, k)) if field.order() > TABLE_MAX_ORDER => {
            Ok(nt::gcd(d, field.order() - 1) == 1 && ha_pp_check(field, a, r, k)?)
        }
        _ => Ok(is_cpp_exponent_pair(field, d, a)?),
    }
}

fn instance(label: String, a: FieldElem, passed: bool, note: Option<String>) -> Instance {
    Instance { label, a: a.encoding(), passed, note }
}

fn tagged_instances(
    field: &Field,
    d: u128,
    r: usize,
    k: usize,
    tag: impl Fn(FieldElem) -> cppforge_core::Result<Option<ConditionTag>>,
) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for a in field.elements().skip(1) {
        if let Some(t) = tag(a)? {
            out.push(instance(t.to_string(), a, cpp_check(field, d, a, Some((r, k)))?, None));
        }
    }
    Ok(out)
}

pub fn verify(family: FamilyId, params: &VerifyParams) -> Result<VerifyReport> {
    let id = family;
    match family {
        FamilyId::Niho2 | FamilyId::P3k2 => {
            let (p, i) = if family == FamilyId::P3k2 {
                (3, 1)
            } else {
                (need(params.p, "p", id)?, need(params.i, "i", id)?)
            };
            let k = need(params.k, "k", id)?;
            let d = niho2_exponent(p, k, i)?;
            let (field, src) = build_field(p, 2 * k, None)?;
            let ctx = NihoCtx::new(&field)?;
            let instances = niho2_coefficient_set(&ctx)?
                .into_iter()
                .map(|a| Ok(instance("a in V".into(), a, cpp_check(&field, d, a, None)?, None)))
                .collect::<Result<_>>()?;
            Ok(VerifyReport::new(id, FieldInfo::new(&field, src), Some(d), instances))
        }
        FamilyId::R4General | FamilyId::R4P3 | FamilyId::R4P5 => {
            let p = match family {
                FamilyId::R4P3 => 3,
                FamilyId::R4P5 => 5,
                _ => need(params.p, "p", id)?,
            };
            let k = need(params.k, "k", id)?;
            let d = dr_exponent(p, k, 4)?;
            let (field, src) = build_field(p, 4 * k, None)?;
            let f = &field;
            let instances = match family {
                FamilyId::R4P3 => tagged_instances(f, d, 4, k, |a| coro_p3n4k_condition(f, a, k))?,
                FamilyId::R4P5 => {
                    tagged_instances(f, d, 4, k, |a| thm_r4_p5_condition(f, a, k, P5Cond3Variant::Statement))?
                }
                _ => tagged_instances(f, d, 4, k, |a| thm_r4_condition(f, a, k))?,
            };
            Ok(VerifyReport::new(id, FieldInfo::new(f, src), Some(d), instances))
        }
        FamilyId::R4P3Beta => {
            let k = need(params.k, "k", id)?;
            let d = dr_exponent(3, k, 4)?;
            let (field, src) = build_beta_field(3, 4 * k, &BETA_QUARTIC)?;
            let beta = beta_quartic(&field)?;
            let sub = field.subfield_elements(k)?;
            let mut seen: BTreeMap<FieldElem, String> = BTreeMap::new();
            for family in 1..=4 {
                for &u in &sub {
                    for &v in &sub {
                        if u.is_zero() && v.is_zero() {
                            continue;
                        }
                        let a = coro_p3_beta_generate(&field, beta, family, u, v, k)?;
                        seen.entry(a).or_insert_with(|| format!("family {family} (u={u}, v={v})"));
                    }
                }
            }
            let instances = seen
                .into_iter()
                .map(|(a, label)| Ok(instance(label, a, cpp_check(&field, d, a, Some((4, k)))?, None)))
                .collect::<Result<_>>()?;
            Ok(VerifyReport::new(id, FieldInfo::new(&field, src), Some(d), instances))
        }
        FamilyId::R4P5Vset => {
            let k = need(params.k, "k", id)?;
            let d = dr_exponent(5, k, 4)?;
            let (field, src) = build_field(5, 4 * k, None)?;
            let instances = coro_p5_vset(&field, k)?
                .into_iter()
                .map(|a| Ok(instance("a in V".into(), a, cpp_check(&field, d, a, Some((4, k)))?, None)))
                .collect::<Result<_>>()?;
            Ok(VerifyReport::new(id, FieldInfo::new(&field, src), Some(d), instances))
        }
        FamilyId::R6P3 | FamilyId::R6P5 => {
            let p = if family == FamilyId::R6P3 { 3 } else { 5 };
            let k = need(params.k, "k", id)?;
            let d = dr_exponent(p, k, 6)?;
            let (field, src) = build_beta_field(p, 6 * k, &BETA_SEXTIC)?;
            let beta = beta_sextic(&field)?;
            let sub = field.subfield_elements(k)?;
            let mut instances = Vec::new();
            for family in 1..=r6_families(p)?.len() {
                for &u in sub.iter().filter(|u| !u.is_zero()) {
                    let a = r6_family_element(&field, beta, family, u, k)?;
                    let cpp = cpp_check(&field, d, a, Some((6, k)))?;
                    let eta = is_dickson_of_degree(&field, &lambda_coeffs(&field, a, 6, k)?, 7);
                    let note = match eta {
                        Some(eta) => format!("h_a matches D_7(x, {eta})"),
                        None => "h_a is not a degree-7 Dickson polynomial".to_string(),
                    };
                    instances.push(instance(format!("family {family} (u={u})"), a, cpp && eta.is_some(), Some(note)));
                }
            }
            Ok(VerifyReport::new(id, FieldInfo::new(&field, src), Some(d), instances))
        }
        FamilyId::RpK1 | FamilyId::RtK1 => {
            let p = need(params.p, "p", id)?;
            let t = if family == FamilyId::RpK1 { 1 } else { need(params.t, "t", id)? };
            let rt = thm_rt_k1(p, t)?;
            let (field, src) = build_field(p, rt.r(), None)?;
            let instances = rt
                .coefficient_set(&field)?
                .into_iter()
                .map(|a| Ok(instance("a^(p-1) = -1".into(), a, cpp_check(&field, rt.d, a, Some((rt.r(), 1)))?, None)))
                .collect::<Result<_>>()?;
            Ok(VerifyReport::new(id, FieldInfo::new(&field, src), Some(rt.d), instances))
        }
        FamilyId::Multinomial => verify_multinomial(params),
        FamilyId::Conj1 | FamilyId::Conj2 => {
            Err(HarnessError::Usage(format!("{family} is checked with the `conjecture` command")))
        }
    }
}

fn verify_multinomial(params: &VerifyParams) -> Result<VerifyReport> {
    let id = FamilyId::Multinomial;
    let p = need(params.p, "p", id)?;
    let k = need(params.k, "k", id)?;
    let r = need(params.r, "r", id)?;
    let preset = need(params.preset, "preset", id)?;
    let (field, src) = build_field(p, r * k, None)?;
    let f = &field;
    let (g, v) = multinomial_preset(f, preset, k)?
        .ok_or_else(|| HarnessError::Usage(format!("preset {} does not apply to p = {p}, k = {k}", preset.as_str())))?;
    let mut instances = Vec::new();
    for a in multinomial_admissible_a(f, k)? {
        let m = Multinomial::new(f, g.clone(), v, a, k)?;
        let step = (f.order() / 4096).max(1);
        let trace_ok = (0..f.order()).step_by(step as usize).all(|e| m.trace_identity_holds(f, FieldElem::from_encoding_unchecked(e)));
        let shifted = m.shifted_hypothesis_holds(f);
        let cpp = is_cpp(&multinomial_map(f, m));
        let mut notes = Vec::new();
        if !trace_ok {
            notes.push("trace identity fails");
        }
        if !shifted {
            notes.push("x g(x) + v(a+1)/a x does not permute the subfield");
        }
        let note = (!notes.is_empty()).then(|| notes.join("; "));
        instances.push(instance(format!("preset {}", preset.as_str()), a, cpp && trace_ok, note));
    }
    Ok(VerifyReport::new(id, FieldInfo::new(f, src), None, instances))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: Option<u64>, k: usize) -> VerifyParams {
        VerifyParams { p, k: Some(k), ..Default::default() }
    }

    #[test]
    fn niho2_counts() {
        let rep = verify(FamilyId::Niho2, &VerifyParams { i: Some(1), ..params(Some(3), 2) }).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.tested, 8);
    }

    #[test]
    fn r6_p3_all_pass() {
        let rep = verify(FamilyId::R6P3, &params(None, 1)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.tested, 24);
    }

    #[test]
    fn multinomial_zero_preset() {
        let rep = verify(
            FamilyId::Multinomial,
            &VerifyParams { r: Some(5), preset: Some(GPreset::Zero), ..params(Some(3), 1) },
        )
        .unwrap();
        assert!(rep.passed());
        assert_eq!(rep.tested, 1);
        assert_eq!(rep.instances[0].a, 1);
    }

    #[test]
    fn missing_parameter_is_usage_error() {
        let err = verify(FamilyId::Niho2, &VerifyParams::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
