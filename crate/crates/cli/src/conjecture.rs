//! `conjecture`: the Dickson-polynomial search and the `r = p - 1` check
//! over a range of `k`.

use cppforge_core::families::{conj1_search, conj2_verify, Conj1Report, Conj2Report};
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::report::{build_field, FieldInfo, VERSION};

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum RunDetail {
    Search(Conj1Report),
    Check(Conj2Report),
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureRun {
    pub k: usize,
    pub field: FieldInfo,
    pub passed: bool,
    pub detail: RunDetail,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub id: u8,
    pub p: u64,
    pub r: usize,
    pub runs: Vec<ConjectureRun>,
    pub version: &'static str,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        !self.runs.is_empty() && self.runs.iter().all(|r| r.passed)
    }
}

pub fn run(id: u8, p: u64, r: Option<usize>, kmin: usize, kmax: usize, budget: Option<u64>) -> Result<ConjectureReport> {
    if kmin == 0 || kmin > kmax {
        return Err(HarnessError::Usage(format!("need 1 <= kmin <= kmax, got {kmin}..{kmax}")));
    }
    let r = match id {
        1 => r.ok_or_else(|| HarnessError::Usage("conjecture 1 needs --r".into()))?,
        2 => {
            let forced = usize::try_from(p).unwrap_or(usize::MAX).saturating_sub(1);
            if r.is_some_and(|r| r != forced) {
                return Err(HarnessError::Usage(format!("conjecture 2 fixes r = p - 1 = {forced}")));
            }
            forced
        }
        _ => return Err(HarnessError::Usage(format!("unknown conjecture {id}"))),
    };
    let mut runs = Vec::new();
    for k in kmin..=kmax {
        let (field, src) = build_field(p, r * k, None)?;
        let (passed, detail) = if id == 1 {
            let rep = conj1_search(&field, r, k, budget)?;
            (!rep.witnesses.is_empty(), RunDetail::Search(rep))
        } else {
            let rep = conj2_verify(&field, k)?;
            (rep.passed(), RunDetail::Check(rep))
        };
        runs.push(ConjectureRun { k, field: FieldInfo::new(&field, src), passed, detail });
    }
    Ok(ConjectureReport { id, p, r, runs, version: VERSION })
}
