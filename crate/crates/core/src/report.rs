//! Run configuration, orchestration and CSV/JSON output.
//!
//! CSV columns, in order:
//!
//! ```text
//! case_id,theorem,a,b_or_alpha,T,lhs,rhs,delta,err_estimate,zeros_used,wall_time_ms,status
//! ```
//!
//! Reals are written in scientific notation with 17 significant digits, so
//! every value reads back bit-exactly. Absent values are empty fields.
//! `wall_time_ms` is empty unless timing was requested, which keeps repeated
//! runs byte-identical. `status` is `ok` or `error: <message>`.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::identities::{evaluate, integrand_at, CaseSpec, IdentityError, Theorem, ZetaSource};
use crate::zeros::{load_odlyzko, CatalogError, ZeroCatalog};

/// Environment variable overriding every case's panel budget.
pub const PANEL_BUDGET_ENV: &str = "VERIFIER_PANEL_BUDGET";

pub const CSV_HEADER: [&str; 12] = [
    "case_id",
    "theorem",
    "a",
    "b_or_alpha",
    "T",
    "lhs",
    "rhs",
    "delta",
    "err_estimate",
    "zeros_used",
    "wall_time_ms",
    "status",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format {other:?} (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DumpRequest {
    pub case_id: String,
    pub t_lo: f64,
    pub t_hi: f64,
    pub n_samples: usize,
}

/// A single JSON document describing an experiment.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default)]
    pub cases: Vec<CaseSpec>,
    #[serde(default)]
    pub zeros_path: Option<PathBuf>,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub output_format: OutputFormat,
    #[serde(default)]
    pub dump_integrand: Option<DumpRequest>,
    /// Record wall time per case (makes output run-dependent).
    #[serde(default)]
    pub timing: bool,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot read config {path}: {source}")]
    ConfigIo {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("invalid config {path}: {source}")]
    ConfigParse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self, ReportError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ReportError::ConfigIo { path: path.to_path_buf(), source })?;
        Self::from_json(&text).map_err(|source| ReportError::ConfigParse { path: path.to_path_buf(), source })
    }

    pub fn validate(&self) -> Result<(), ReportError> {
        if let Some(d) = &self.dump_integrand {
            if d.n_samples < 2 {
                return Err(ReportError::Invalid("dump_integrand.n_samples must be at least 2".into()));
            }
            if !(d.t_lo < d.t_hi) {
                return Err(ReportError::Invalid("dump_integrand needs t_lo < t_hi".into()));
            }
        }
        for p in [&self.zeros_path, &self.output_path].into_iter().flatten() {
            if p.as_os_str().is_empty() {
                return Err(ReportError::Invalid("paths must be nonempty".into()));
            }
        }
        Ok(())
    }
}

/// One output line: a case, both sides of its identity and their difference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRow {
    pub case_id: String,
    pub theorem: Theorem,
    pub a: Option<f64>,
    pub b_or_alpha: Option<f64>,
    #[serde(rename = "T")]
    pub t_max: f64,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    /// `lhs − rhs` as computed by the evaluator.
    pub delta: Option<f64>,
    pub err_estimate: Option<f64>,
    pub zeros_used: Option<usize>,
    pub wall_time_ms: Option<f64>,
    pub status: String,
}

impl OutputRow {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    fn failed(spec: &CaseSpec, message: impl std::fmt::Display) -> Self {
        Self {
            case_id: spec.id.clone(),
            theorem: spec.theorem,
            a: spec.a,
            b_or_alpha: spec.b_or_alpha(),
            t_max: spec.t_max,
            lhs: None,
            rhs: None,
            delta: None,
            err_estimate: None,
            zeros_used: None,
            wall_time_ms: None,
            status: format!("error: {message}"),
        }
    }
}

/// Applies `VERIFIER_PANEL_BUDGET` when set to a positive integer.
pub fn apply_env_overrides(cases: &mut [CaseSpec]) -> Result<(), ReportError> {
    if let Ok(v) = std::env::var(PANEL_BUDGET_ENV) {
        let budget: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| ReportError::Invalid(format!("{PANEL_BUDGET_ENV}={v:?} is not a positive integer")))?;
        for c in cases {
            c.panel_budget = budget;
        }
    }
    Ok(())
}

fn evaluate_row(spec: &CaseSpec, catalog: &Result<ZeroCatalog, String>, timing: bool) -> OutputRow {
    let empty = ZeroCatalog::empty();
    let table = match catalog {
        Ok(c) => c,
        Err(msg) if spec.needs_zero_table() => return OutputRow::failed(spec, msg),
        Err(_) => &empty,
    };
    match evaluate(spec, table) {
        Ok(report) => {
            let bd = &report.breakdown;
            OutputRow {
                case_id: spec.id.clone(),
                theorem: spec.theorem,
                a: spec.a.or_else(|| spec.theorem.uses_alpha().then(|| 0.5 - spec.alpha.unwrap_or(0.0))),
                b_or_alpha: spec.b_or_alpha(),
                t_max: spec.t_max,
                lhs: Some(bd.lhs),
                rhs: Some(bd.rhs),
                delta: Some(bd.residual),
                err_estimate: Some(report.err_estimate),
                zeros_used: Some(bd.zeros_used),
                wall_time_ms: timing.then_some(report.wall_time.as_secs_f64() * 1e3),
                status: "ok".into(),
            }
        }
        Err(e) => OutputRow::failed(spec, e),
    }
}

/// Evaluates every case in parallel against an already loaded catalog.
/// Rows come back in input order; a failing case yields an error row.
pub fn run_with_catalog(cases: &[CaseSpec], catalog: Result<ZeroCatalog, String>, timing: bool) -> Vec<OutputRow> {
    cases.par_iter().map(|spec| evaluate_row(spec, &catalog, timing)).collect()
}

/// Loads the zero table named in the config (if any) and evaluates all cases.
pub fn run(config: &RunConfig) -> Result<Vec<OutputRow>, ReportError> {
    config.validate()?;
    let catalog = match &config.zeros_path {
        Some(path) => load_odlyzko(path).map_err(|e| e.to_string()),
        None => Ok(ZeroCatalog::empty()),
    };
    if let Err(msg) = &catalog {
        log::warn!("zero table unavailable: {msg}");
    }
    Ok(run_with_catalog(&config.cases, catalog, config.timing))
}

/// Built-in cases addressable by id.
pub fn builtin_case(id: &str) -> Option<CaseSpec> {
    match id {
        "case1" => Some(CaseSpec::with_ab("case1", Theorem::Eq2, 1.0, 0.75, 1000.0)),
        "case2" => Some(CaseSpec::with_ab("case2", Theorem::Eq2, 1.0, 0.25, 1000.0)),
        _ => None,
    }
}

/// The four reference cells: `case1` (b = 3/4) and `case2` (b = 1/4) at
/// `T = 300` and `T = 1000`.
pub fn table1_cases() -> Vec<CaseSpec> {
    let mut cases = Vec::new();
    for (name, b) in [("case1", 0.75), ("case2", 0.25)] {
        for t in [300.0, 1000.0] {
            cases.push(CaseSpec::with_ab(&format!("{name}_T{t}"), Theorem::Eq2, 1.0, b, t));
        }
    }
    cases
}

pub fn reproduce_table1(zeros_path: &Path) -> Result<Vec<OutputRow>, ReportError> {
    let catalog = load_odlyzko(zeros_path)?;
    let mut cases = table1_cases();
    apply_env_overrides(&mut cases)?;
    Ok(run_with_catalog(&cases, Ok(catalog), false))
}

/// `n` samples `(t, integrand(t))` of the case's vertical-line integrand on a
/// uniform grid whose ends are exactly `t_lo` and `t_hi`.
pub fn dump_integrand(
    spec: &CaseSpec,
    catalog: &ZeroCatalog,
    t_lo: f64,
    t_hi: f64,
    n: usize,
) -> Result<Vec<(f64, f64)>, ReportError> {
    if n < 2 || !(t_lo < t_hi) {
        return Err(ReportError::Invalid("dump needs t_lo < t_hi and at least 2 samples".into()));
    }
    let source = ZetaSource::new(spec.zeta_params, catalog.values());
    let step = (t_hi - t_lo) / (n - 1) as f64;
    (0..n)
        .into_par_iter()
        .map(|i| {
            let t = if i == n - 1 { t_hi } else { t_lo + i as f64 * step };
            Ok((t, integrand_at(spec, &source, t)?))
        })
        .collect()
}

/// 17 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_real(x: Option<f64>) -> String {
    x.map(format_real).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[OutputRow], out: W) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.case_id.clone(),
            r.theorem.to_string(),
            opt_real(r.a),
            opt_real(r.b_or_alpha),
            format_real(r.t_max),
            opt_real(r.lhs),
            opt_real(r.rhs),
            opt_real(r.delta),
            opt_real(r.err_estimate),
            r.zeros_used.map(|n| n.to_string()).unwrap_or_default(),
            opt_real(r.wall_time_ms),
            r.status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[OutputRow], mut out: W) -> Result<(), ReportError> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_rows<W: Write>(rows: &[OutputRow], format: OutputFormat, out: W) -> Result<(), ReportError> {
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Json => write_json(rows, out),
    }
}

fn parse_opt<T: std::str::FromStr>(field: &str) -> Result<Option<T>, ReportError> {
    if field.is_empty() {
        return Ok(None);
    }
    field
        .parse()
        .map(Some)
        .map_err(|_| ReportError::Invalid(format!("cannot parse field {field:?}")))
}

/// Reads rows written by [`write_csv`].
pub fn read_csv(text: &str) -> Result<Vec<OutputRow>, ReportError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(ReportError::Invalid(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let theorem: Theorem = serde_json::from_value(serde_json::Value::String(rec[1].to_string()))?;
        rows.push(OutputRow {
            case_id: rec[0].to_string(),
            theorem,
            a: parse_opt(&rec[2])?,
            b_or_alpha: parse_opt(&rec[3])?,
            t_max: parse_opt(&rec[4])?.ok_or_else(|| ReportError::Invalid("missing T".into()))?,
            lhs: parse_opt(&rec[5])?,
            rhs: parse_opt(&rec[6])?,
            delta: parse_opt(&rec[7])?,
            err_estimate: parse_opt(&rec[8])?,
            zeros_used: parse_opt(&rec[9])?,
            wall_time_ms: parse_opt(&rec[10])?,
            status: rec[11].to_string(),
        });
    }
    Ok(rows)
}

/// Writes `t,integrand` samples as CSV.
pub fn write_samples<W: Write>(samples: &[(f64, f64)], out: W) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "integrand"])?;
    for &(t, v) in samples {
        w.write_record([format_real(t), format_real(v)])?;
    }
    w.flush()?;
    Ok(())
}
