// `!(d <= tol)` on purpose: a NaN residual must fail the tolerance check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use logzeta::report::{
    self, apply_env_overrides, builtin_case, dump_integrand, reproduce_table1, write_rows, write_samples,
    OutputFormat, OutputRow, RunConfig,
};
use logzeta::zeros::{load_odlyzko, riemann_von_mangoldt, ZeroCatalog};

/// Evaluate integral identities over ln ζ and report residuals.
#[derive(Debug, Parser)]
#[command(name = "verifier", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate every case of a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Zero table; overrides the config's `zeros_path`.
        #[arg(long)]
        zeros: Option<PathBuf>,
        /// Output file; overrides the config's `output_path` (default stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the config's `output_format`.
        #[arg(long)]
        format: Option<OutputFormat>,
        /// Record wall time per case.
        #[arg(long)]
        timing: bool,
        /// Fail unless every |delta| is at most this value.
        #[arg(long)]
        assert_tol: Option<f64>,
    },
    /// Evaluate the four reference cells: a = 1, b ∈ {3/4, 1/4}, T ∈ {300, 1000}.
    Table1 {
        #[arg(long)]
        zeros: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        assert_tol: Option<f64>,
    },
    /// Sample a case's vertical-line integrand on a uniform grid.
    DumpIntegrand {
        /// Built-in id (`case1`, `case2`) or a case id from `--config`.
        #[arg(long)]
        case: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        zeros: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Load a zero table, write its cache, and print a summary.
    ValidateZeros {
        #[arg(long)]
        zeros: PathBuf,
    },
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Exit status for a finished run: failure if any case errored or, under
/// `--assert-tol`, if any residual exceeds the tolerance.
fn finish(rows: &[OutputRow], assert_tol: Option<f64>) -> ExitCode {
    let mut ok = true;
    for r in rows {
        if !r.is_ok() {
            log::error!("case {}: {}", r.case_id, r.status);
            ok = false;
        } else if let (Some(tol), Some(d)) = (assert_tol, r.delta) {
            if !(d.abs() <= tol) {
                log::error!("case {}: |delta| = {:e} exceeds {tol:e}", r.case_id, d.abs());
                ok = false;
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> Result<ExitCode> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, zeros, out, format, timing, assert_tol } => {
            let mut cfg = RunConfig::load(&config)?;
            if zeros.is_some() {
                cfg.zeros_path = zeros;
            }
            if out.is_some() {
                cfg.output_path = out;
            }
            if let Some(f) = format {
                cfg.output_format = f;
            }
            cfg.timing |= timing;
            apply_env_overrides(&mut cfg.cases)?;
            let rows = report::run(&cfg)?;
            let mut w = open_out(cfg.output_path.as_deref())?;
            write_rows(&rows, cfg.output_format, &mut w)?;
            w.flush()?;
            if let Some(d) = &cfg.dump_integrand {
                let spec = cfg
                    .cases
                    .iter()
                    .find(|c| c.id == d.case_id)
                    .cloned()
                    .or_else(|| builtin_case(&d.case_id))
                    .with_context(|| format!("dump_integrand: unknown case {:?}", d.case_id))?;
                let catalog = match &cfg.zeros_path {
                    Some(p) => load_odlyzko(p)?,
                    None => ZeroCatalog::empty(),
                };
                let samples = dump_integrand(&spec, &catalog, d.t_lo, d.t_hi, d.n_samples)?;
                write_samples(&samples, io::stderr().lock())?;
            }
            Ok(finish(&rows, assert_tol))
        }
        Command::Table1 { zeros, out, format, assert_tol } => {
            let rows = reproduce_table1(&zeros)?;
            let mut w = open_out(out.as_deref())?;
            write_rows(&rows, format, &mut w)?;
            w.flush()?;
            Ok(finish(&rows, assert_tol))
        }
        Command::DumpIntegrand { case, from, to, samples, config, zeros, out } => {
            let cfg = match &config {
                Some(p) => RunConfig::load(p)?,
                None => RunConfig::default(),
            };
            let spec = cfg
                .cases
                .iter()
                .find(|c| c.id == case)
                .cloned()
                .or_else(|| builtin_case(&case));
            let Some(spec) = spec else {
                bail!("unknown case {case:?}; built-in ids are case1 and case2");
            };
            let catalog = match zeros.or(cfg.zeros_path) {
                Some(p) => load_odlyzko(&p)?,
                None => ZeroCatalog::empty(),
            };
            let rows = dump_integrand(&spec, &catalog, from, to, samples)?;
            let mut w = open_out(out.as_deref())?;
            write_samples(&rows, &mut w)?;
            w.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ValidateZeros { zeros } => {
            let catalog = load_odlyzko(&zeros)?;
            let mut w = io::stdout().lock();
            writeln!(w, "source: {}", catalog.source_path())?;
            writeln!(w, "count: {}", catalog.count())?;
            writeln!(w, "t_max: {}", catalog.t_max())?;
            for t in [100.0, 300.0, 1000.0] {
                if t <= catalog.t_max() {
                    let n = catalog.zeros_up_to(t)?.len();
                    writeln!(w, "N({t}) = {n} (Riemann-von Mangoldt {:.2})", riemann_von_mangoldt(t))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
