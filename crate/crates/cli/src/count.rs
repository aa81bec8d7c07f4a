//! Exhaustive counts of the `a` making `a^{-1} x^d` a CPP, for
//! `d = (p^{rk} - 1)/(p^k - 1) + 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use cppforge_core::families::{dr_exponent, r4_condition_from_lambdas, r4_p5_condition_from_lambdas, ConditionTag, P5Cond3Variant};
use cppforge_core::field::TABLE_MAX_ORDER;
use cppforge_core::ha::{lambda_coeffs, HaScanner};
use cppforge_core::nt;
use cppforge_core::oracle::BinomialKernel;
use cppforge_core::{Error, Field, FieldElem};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{HarnessError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    #[default]
    Ha,
    Both,
}

impl FromStr for Method {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "ha" => Ok(Method::Ha),
            "both" => Ok(Method::Both),
            _ => Err(HarnessError::Usage(format!("unknown method `{s}`"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Ha => "ha",
            Method::Both => "both",
        })
    }
}

/// Theorem used to tag each found coefficient, if one applies to `(p, r, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tagger {
    R4,
    R4P5,
    None,
}

impl Tagger {
    pub fn for_params(p: u64, r: usize, k: usize, field: &Field) -> Self {
        if r != 4 {
            return Tagger::None;
        }
        match p {
            5 => Tagger::R4P5,
            2 => Tagger::None,
            _ if nt::gcd(5, field.p_pow(k) - 1) == 1 => Tagger::R4,
            _ => Tagger::None,
        }
    }

    pub fn tag(self, field: &Field, a: FieldElem, r: usize, k: usize) -> Result<Option<ConditionTag>> {
        if self == Tagger::None {
            return Ok(None);
        }
        let lv = lambda_coeffs(field, a, r, k)?;
        Ok(match self {
            Tagger::R4 => r4_condition_from_lambdas(field, &lv)?,
            Tagger::R4P5 => r4_p5_condition_from_lambdas(field, &lv, P5Cond3Variant::Statement)?,
            Tagger::None => None,
        })
    }
}

pub const UNTAGGED: &str = "untagged";

#[derive(Clone, Debug)]
pub struct CountOutcome {
    pub d: u128,
    /// Ascending, with the first matching condition of the applicable theorem.
    pub hits: Vec<(FieldElem, Option<ConditionTag>)>,
}

impl CountOutcome {
    pub fn count(&self) -> u64 {
        self.hits.len() as u64
    }

    /// Hit counts per condition label, with untagged hits under `"untagged"`.
    pub fn conditions(&self) -> BTreeMap<String, u64> {
        let mut out = BTreeMap::new();
        for (_, tag) in &self.hits {
            let key = tag.as_ref().map_or_else(|| UNTAGGED.to_string(), ConditionTag::label);
            *out.entry(key).or_insert(0) += 1;
        }
        out
    }

    pub fn csv_rows(&self) -> Vec<(FieldElem, String)> {
        self.hits
            .iter()
            .map(|(a, t)| (*a, t.as_ref().map_or_else(|| UNTAGGED.to_string(), ConditionTag::label)))
            .collect()
    }
}

const CHUNK: u64 = 1 << 12;

fn scan(field: &Field, progress: &AtomicU64, pred: impl Fn(FieldElem) -> Result<bool> + Sync) -> Result<Vec<FieldElem>> {
    let order = u64::try_from(field.order()).map_err(|_| Error::CapExceeded("field order exceeds 2^64".into()))?;
    let chunks = order.div_ceil(CHUNK);
    let parts: Vec<Vec<FieldElem>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = (c * CHUNK).max(1);
            let hi = ((c + 1) * CHUNK).min(order);
            let mut hits = Vec::new();
            for enc in lo..hi {
                let a = FieldElem::from_encoding_unchecked(enc as u128);
                if pred(a)? {
                    hits.push(a);
                }
            }
            progress.fetch_add(hi.saturating_sub(lo), Ordering::Relaxed);
            Ok(hits)
        })
        .collect::<Result<_>>()?;
    Ok(parts.concat())
}

/// Direct scan: one permutation check of `x^d + a x` per `a`.
pub fn scan_direct(field: &Field, d: u128, progress: &AtomicU64) -> Result<Vec<FieldElem>> {
    if field.order() > TABLE_MAX_ORDER {
        return Err(Error::CapExceeded(format!("direct scans need p^n <= {TABLE_MAX_ORDER}")).into());
    }
    if nt::gcd(d, field.order() - 1) != 1 {
        progress.fetch_add(field.order() as u64 - 1, Ordering::Relaxed);
        return Ok(Vec::new());
    }
    let order = field.order() as u64;
    let chunks = order.div_ceil(CHUNK);
    let parts: Vec<Vec<FieldElem>> = (0..chunks)
        .into_par_iter()
        .map_init(
            || BinomialKernel::new(field, d).expect("table backend below the cap"),
            |kernel, c| {
                let lo = (c * CHUNK).max(1);
                let hi = ((c + 1) * CHUNK).min(order);
                let hits: Vec<FieldElem> = (lo..hi)
                    .map(|e| FieldElem::from_encoding_unchecked(e as u128))
                    .filter(|&a| kernel.is_permutation(a))
                    .collect();
                progress.fetch_add(hi.saturating_sub(lo), Ordering::Relaxed);
                hits
            },
        )
        .collect();
    Ok(parts.concat())
}

/// Subfield scan: `a` counts iff `gcd(d, p^n - 1) = 1` and `h_a` permutes
/// F_{p^k}.
pub fn scan_ha(field: &Field, r: usize, k: usize, d: u128, progress: &AtomicU64) -> Result<Vec<FieldElem>> {
    let scanner = HaScanner::new(field, r, k)?;
    if nt::gcd(d, field.order() - 1) != 1 {
        return Ok(Vec::new());
    }
    scan(field, progress, |a| Ok(scanner.check(a)?))
}

/// Counts over F_{p^{rk}} with the given method; `Both` fails on the first
/// coefficient where the two scans disagree.
pub fn count_cpp(field: &Field, r: usize, k: usize, method: Method, progress: &AtomicU64) -> Result<CountOutcome> {
    let p = field.characteristic();
    if field.degree() != r * k {
        return Err(Error::DegreeMismatch { n: field.degree(), r, k }.into());
    }
    let d = dr_exponent(p, k, r)?;
    let found = match method {
        Method::Direct => scan_direct(field, d, progress)?,
        Method::Ha => scan_ha(field, r, k, d, progress)?,
        Method::Both => {
            let direct = scan_direct(field, d, progress)?;
            let ha = scan_ha(field, r, k, d, progress)?;
            if let Some(a) = first_difference(&direct, &ha) {
                let direct_has = direct.binary_search(&a).is_ok();
                return Err(HarnessError::Mismatch { a: a.encoding(), direct: direct_has, ha: !direct_has });
            }
            direct
        }
    };
    let tagger = Tagger::for_params(p, r, k, field);
    let hits = found
        .into_iter()
        .map(|a| Ok((a, tagger.tag(field, a, r, k)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountOutcome { d, hits })
}

fn first_difference(x: &[FieldElem], y: &[FieldElem]) -> Option<FieldElem> {
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => return Some(x[i]),
            std::cmp::Ordering::Greater => return Some(y[j]),
        }
    }
    x.get(i).or(y.get(j)).copied()
}
