//! Tables of zero ordinates.
//!
//! The text format is one decimal ordinate per non-blank line (surrounding
//! whitespace ignored), strictly increasing, starting with the first zero
//! `14.1347…`. After a successful parse a binary sidecar `<source>.bin` is
//! written:
//!
//! ```text
//! offset 0        u64 LE   count
//! offset 8        f64 LE   ordinates[count]
//! offset 8+8n     [u8;32]  SHA-256 of the source file bytes
//! ```
//!
//! The sidecar is used on later loads only when its checksum matches the
//! current source contents.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Admissible range for the first ordinate.
pub const FIRST_ZERO_RANGE: (f64, f64) = (14.13, 14.14);
/// Ordinates closer than this are duplicates.
pub const DUPLICATE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: cannot parse {text:?} as an ordinate")]
    Parse { line: usize, text: String },
    #[error("line {line}: ordinate {value} does not exceed the previous one {previous}")]
    Order { line: usize, previous: f64, value: f64 },
    #[error("first ordinate {0} lies outside [14.13, 14.14]")]
    Range(f64),
    #[error("truncation height {t} exceeds the last tabulated ordinate {t_max}")]
    TruncationExceedsTable { t: f64, t_max: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroOrdinate {
    /// 1-based rank.
    pub index: usize,
    pub t: f64,
}

/// A zero `σ + it` supplied by hand, used to exercise the zero-term machinery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypotheticalZero {
    pub sigma: f64,
    pub t: f64,
    #[serde(default = "one")]
    pub multiplicity: u32,
}

fn one() -> u32 {
    1
}

impl HypotheticalZero {
    pub fn new(sigma: f64, t: f64, multiplicity: u32) -> Self {
        Self { sigma, t, multiplicity }
    }

    pub fn on_critical_line(t: f64) -> Self {
        Self::new(0.5, t, 1)
    }

    pub fn is_valid(&self) -> bool {
        self.sigma > 0.0 && self.sigma < 1.0 && self.multiplicity >= 1 && self.t.is_finite()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZeroCatalog {
    ordinates: Vec<ZeroOrdinate>,
    source_path: String,
}

impl ZeroCatalog {
    /// Validates and wraps ordinates already in memory.
    pub fn from_ordinates(values: &[f64], source_path: impl Into<String>) -> Result<Self, CatalogError> {
        validate(values)?;
        Ok(Self {
            ordinates: values
                .iter()
                .enumerate()
                .map(|(i, &t)| ZeroOrdinate { index: i + 1, t })
                .collect(),
            source_path: source_path.into(),
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn ordinates(&self) -> &[ZeroOrdinate] {
        &self.ordinates
    }

    pub fn values(&self) -> Vec<f64> {
        self.ordinates.iter().map(|z| z.t).collect()
    }

    pub fn source_path(&self) -> &str {
        &self.source_path
    }

    pub fn count(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Last ordinate, or 0 for an empty table.
    pub fn t_max(&self) -> f64 {
        self.ordinates.last().map_or(0.0, |z| z.t)
    }

    /// Every ordinate `≤ t`.
    ///
    /// An empty catalog answers with an empty list at any height; a non-empty
    /// one refuses heights beyond its last entry.
    pub fn zeros_up_to(&self, t: f64) -> Result<&[ZeroOrdinate], CatalogError> {
        if !self.is_empty() && t > self.t_max() {
            return Err(CatalogError::TruncationExceedsTable { t, t_max: self.t_max() });
        }
        let n = self.ordinates.partition_point(|z| z.t <= t);
        Ok(&self.ordinates[..n])
    }

    /// Ordinates `≤ t` as plain values.
    pub fn values_up_to(&self, t: f64) -> Result<Vec<f64>, CatalogError> {
        Ok(self.zeros_up_to(t)?.iter().map(|z| z.t).collect())
    }
}

fn validate(values: &[f64]) -> Result<(), CatalogError> {
    if let Some(&first) = values.first() {
        if !(first >= FIRST_ZERO_RANGE.0 && first <= FIRST_ZERO_RANGE.1) {
            return Err(CatalogError::Range(first));
        }
    }
    for (i, w) in values.windows(2).enumerate() {
        if !(w[1] - w[0] > DUPLICATE_TOLERANCE) {
            return Err(CatalogError::Order { line: i + 2, previous: w[0], value: w[1] });
        }
    }
    Ok(())
}

/// Parses the text format. Line numbers in errors are 1-based source lines.
///
/// Ordering is checked before the first-ordinate range, so a reversed table
/// reports an order fault.
pub fn parse_odlyzko(text: &str) -> Result<Vec<f64>, CatalogError> {
    let mut rows: Vec<(usize, f64)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let value = line
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| CatalogError::Parse { line: i + 1, text: line.to_string() })?;
        rows.push((i + 1, value));
    }
    for w in rows.windows(2) {
        let ((_, previous), (line, value)) = (w[0], w[1]);
        if !(value - previous > DUPLICATE_TOLERANCE) {
            return Err(CatalogError::Order { line, previous, value });
        }
    }
    let values: Vec<f64> = rows.into_iter().map(|(_, v)| v).collect();
    validate(&values)?;
    Ok(values)
}

/// Sidecar path for a source table.
pub fn cache_path(source: &Path) -> PathBuf {
    let mut name = source.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".bin");
    source.with_file_name(name)
}

pub fn encode_cache(values: &[f64], checksum: &[u8; 32]) -> Vec<u8> {
    let mut buf = Vec::with_capacity(8 + 8 * values.len() + 32);
    buf.extend_from_slice(&(values.len() as u64).to_le_bytes());
    for v in values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    buf.extend_from_slice(checksum);
    buf
}

/// Returns the ordinates and the stored checksum.
pub fn decode_cache(bytes: &[u8]) -> Option<(Vec<f64>, [u8; 32])> {
    let count = u64::from_le_bytes(bytes.get(..8)?.try_into().ok()?) as usize;
    let body_end = count.checked_mul(8)?.checked_add(8)?;
    if bytes.len() != body_end.checked_add(32)? {
        return None;
    }
    let values = bytes[8..body_end]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let checksum = bytes[body_end..].try_into().ok()?;
    Some((values, checksum))
}

fn checksum(bytes: &[u8]) -> [u8; 32] {
    Sha256::digest(bytes).into()
}

/// Loads a table, preferring a sidecar cache whose checksum matches.
///
/// A fresh cache is written after parsing; failure to write it is logged and
/// otherwise ignored.
pub fn load_odlyzko(path: impl AsRef<Path>) -> Result<ZeroCatalog, CatalogError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| CatalogError::Io { path: path.to_path_buf(), source })?;
    let sum = checksum(&bytes);
    let display = path.display().to_string();
    let sidecar = cache_path(path);

    if let Ok(cached) = fs::read(&sidecar) {
        if let Some((values, stored)) = decode_cache(&cached) {
            if stored == sum {
                return ZeroCatalog::from_ordinates(&values, display);
            }
        }
    }

    let text = String::from_utf8_lossy(&bytes);
    let values = parse_odlyzko(&text)?;
    let catalog = ZeroCatalog::from_ordinates(&values, display)?;
    if let Err(e) = fs::write(&sidecar, encode_cache(&values, &sum)) {
        log::debug!("not writing zero cache {}: {e}", sidecar.display());
    }
    Ok(catalog)
}

/// Reads only the text table, bypassing any cache.
pub fn load_odlyzko_uncached(path: impl AsRef<Path>) -> Result<ZeroCatalog, CatalogError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CatalogError::Io { path: path.to_path_buf(), source })?;
    ZeroCatalog::from_ordinates(&parse_odlyzko(&text)?, path.display().to_string())
}

/// First-order Riemann–von Mangoldt count `(T/2π)·ln(T/2πe) + 7/8`.
pub fn riemann_von_mangoldt(t: f64) -> f64 {
    let x = t / std::f64::consts::TAU;
    x * (x.ln() - 1.0) + 0.875
}
