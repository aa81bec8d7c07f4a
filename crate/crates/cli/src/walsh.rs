//! `walsh`: Walsh values of `Tr(x^d)` for Niho exponents from the count
//! `N(a)`, cross-checked by direct character sums on small fields.

use cppforge_core::niho::{direct_walsh, NihoCtx};
use cppforge_core::oracle::{FieldMap, CHARSUM_MAX_ORDER};
use cppforge_core::{Error, FieldElem};
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::report::{build_field, FieldInfo, VERSION};

#[derive(Clone, Copy, Debug)]
pub enum Exponent {
    S(u128),
    D(u128),
}

#[derive(Clone, Copy, Debug)]
pub enum Points {
    One(u128),
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct WalshRow {
    pub a: u128,
    pub n_a: u64,
    pub value: String,
    pub in_v: bool,
    /// `a = 0` lies outside the range of the counting lemma.
    pub out_of_scope: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WalshReport {
    pub field: FieldInfo,
    pub s: String,
    pub d: String,
    pub rows: Vec<WalshRow>,
    pub version: &'static str,
}

impl WalshReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agrees != Some(false))
    }
}

pub fn run(p: u64, k: usize, exponent: Exponent, points: Points, cross_check: bool) -> Result<WalshReport> {
    let (field, src) = build_field(p, 2 * k, None)?;
    let ctx = NihoCtx::new(&field)?;
    let q = ctx.q();
    let (s, d) = match exponent {
        Exponent::S(s) => (s, s.checked_mul(q - 1).and_then(|v| v.checked_add(1)).ok_or_else(|| Error::CapExceeded("d overflows".into()))?),
        Exponent::D(d) => {
            let s = ctx.niho_s(d).ok_or_else(|| HarnessError::Usage(format!("{d} is not a Niho exponent of this field")))?;
            (s, d)
        }
    };
    if cross_check && field.order() > CHARSUM_MAX_ORDER {
        return Err(Error::FieldTooLargeForCharSum { order: field.order() }.into());
    }
    let points: Vec<FieldElem> = match points {
        Points::One(enc) => vec![field.element(enc)?],
        Points::All => field.elements().collect(),
    };
    let f = &field;
    let g = FieldMap::new(f, move |x| f.pow(x, d));
    let neg_one = f.neg_one();
    let mut rows = Vec::with_capacity(points.len());
    for a in points {
        let n_a = ctx.count_n(a, s)?;
        let value = ctx.walsh_niho(a, s)?;
        let (direct, agrees) = if cross_check {
            let w = direct_walsh(&g, a)?;
            let agrees = w.as_integer().map(i128::from) == Some(value);
            (Some(w.to_string()), Some(agrees))
        } else {
            (None, None)
        };
        rows.push(WalshRow {
            a: a.encoding(),
            n_a,
            value: value.to_string(),
            in_v: !a.is_zero() && f.pow(a, q - 1) == neg_one,
            out_of_scope: a.is_zero(),
            direct,
            agrees,
        });
    }
    Ok(WalshReport { field: FieldInfo::new(f, src), s: s.to_string(), d: d.to_string(), rows, version: VERSION })
}
