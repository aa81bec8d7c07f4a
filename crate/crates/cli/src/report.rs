//! Report records and their JSON/CSV serialization.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use cppforge_core::{Field, FieldElem};
use serde::Serialize;

use crate::count::Method;
use crate::error::{HarnessError, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Where a field's modulus came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusSource {
    /// Lexicographically least irreducible.
    Default,
    User,
    /// `x^4 - x - 1`, so that `x` itself is the basis root.
    BetaQuartic,
    /// `x^6 + x + 2`.
    BetaSextic,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub p: u64,
    pub n: usize,
    pub modulus: Vec<u64>,
    pub modulus_source: ModulusSource,
}

impl FieldInfo {
    pub fn new(field: &Field, source: ModulusSource) -> Self {
        FieldInfo {
            p: field.characteristic(),
            n: field.degree(),
            modulus: field.modulus().to_vec(),
            modulus_source: source,
        }
    }
}

pub const BETA_QUARTIC: [u64; 5] = [2, 2, 0, 0, 1];
pub const BETA_SEXTIC: [u64; 7] = [2, 1, 0, 0, 0, 0, 1];

/// Parses `c0,c1,...`; a trailing leading coefficient 1 may be omitted.
pub fn parse_modulus(s: &str, n: usize) -> Result<Vec<u64>> {
    let mut coeffs = s
        .split(',')
        .map(|c| c.trim().parse::<u64>().map_err(|_| HarnessError::Usage(format!("bad modulus coefficient `{c}`"))))
        .collect::<Result<Vec<u64>>>()?;
    if coeffs.len() == n {
        coeffs.push(1);
    }
    Ok(coeffs)
}

pub fn build_field(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<(Field, ModulusSource)> {
    let source = if modulus.is_some() { ModulusSource::User } else { ModulusSource::Default };
    Ok((Field::new(p, n, modulus)?, source))
}

/// A field in which the named `beta` polynomial has a root: the polynomial
/// itself as modulus when it has degree `n`, else the default modulus.
pub fn build_beta_field(p: u64, n: usize, beta: &[u64]) -> Result<(Field, ModulusSource)> {
    if beta.len() == n + 1 {
        let src = if n == 4 { ModulusSource::BetaQuartic } else { ModulusSource::BetaSextic };
        Ok((Field::new(p, n, Some(beta))?, src))
    } else {
        build_field(p, n, None)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CppReport {
    pub field: FieldInfo,
    pub d: String,
    pub method: Method,
    pub count: u64,
    pub conditions: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<u128>>,
    /// `None` when timing is disabled for byte-stable output.
    pub seconds: Option<f64>,
    pub version: &'static str,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| HarnessError::Io { path: path.display().to_string(), source })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w).and_then(|_| w.flush()).map_err(|source| HarnessError::Io { path: path.display().to_string(), source })
}

/// One `(a, tag)` row per coefficient.
pub fn write_csv(path: &Path, rows: &[(FieldElem, String)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["a", "tag"])?;
    for (a, tag) in rows {
        w.write_record([a.encoding().to_string(), tag.clone()])?;
    }
    w.flush().map_err(|source| HarnessError::Io { path: path.display().to_string(), source })
}

/// Output format chosen by file extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutFormat {
    Json,
    Csv,
}

pub fn out_format(path: &Path) -> Result<OutFormat> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => Ok(OutFormat::Json),
        Some("csv") => Ok(OutFormat::Csv),
        _ => Err(HarnessError::Usage(format!("{}: output must end in .json or .csv", path.display()))),
    }
}
