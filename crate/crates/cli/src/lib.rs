//! Command-line driver: sweeps, threshold reports, plots and self-tests.

pub mod args;
pub mod plot;
pub mod table;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Serialize;
use xcube::harness::{
    estimate_threshold, run_selftest, sweep_with_progress, CodeStabilizers, HarnessError,
    SweepConfig, ThresholdEstimate,
};
use xcube::noise::GENERATOR_ID;

use args::{Cli, Command, SweepPlan};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags or configuration.
    Usage(String),
    /// Unreadable or unusable input data.
    Input(String),
    Io(String),
    /// A decoder or code invariant broke.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => EXIT_INVARIANT,
            _ => EXIT_USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "bad input: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        if e.is_invariant_failure() {
            CliError::Invariant(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

/// Provenance written next to every sweep CSV.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: SweepConfig,
    pub workers: usize,
    pub output: PathBuf,
    pub master_seed: u64,
    pub started: String,
    pub finished: String,
    pub generator: &'static str,
}

/// `<out>.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn cmd_sweep(plan: &SweepPlan, log: &mut dyn Write) -> Result<(), CliError> {
    let started = chrono::Utc::now().to_rfc3339();
    let result = sweep_with_progress(&plan.config, plan.workers, |pt| {
        let _ = writeln!(
            log,
            "L={} p={} failures={}/{} rate={:.5} [{:.5}, {:.5}]",
            pt.size, pt.p, pt.failures, pt.trials, pt.failure_rate, pt.ci_low, pt.ci_high
        );
    })?;
    table::write(&plan.out, &table::rows(&result))?;
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config: plan.config.clone(),
        workers: plan.workers,
        output: plan.out.clone(),
        master_seed: plan.config.seed,
        started,
        finished: chrono::Utc::now().to_rfc3339(),
        generator: GENERATOR_ID,
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&manifest_path(&plan.out), &(json + "\n"))
}

pub fn cmd_threshold(input: &Path) -> Result<ThresholdEstimate, CliError> {
    let rows = table::read(input)?;
    if rows.is_empty() {
        return Err(CliError::Input(format!(
            "{}: no data rows",
            input.display()
        )));
    }
    let first = &rows[0];
    if rows.iter().any(|r| {
        (&r.sector, &r.variant, r.iterations) != (&first.sector, &first.variant, first.iterations)
    }) {
        return Err(CliError::Input(format!(
            "{}: rows mix sectors or decoder variants",
            input.display()
        )));
    }
    let points: Vec<_> = rows.iter().map(table::Row::point).collect();
    estimate_threshold(&points).map_err(|e| CliError::Input(e.to_string()))
}

pub fn cmd_plot(input: &Path, out: &Path, log_y: bool) -> Result<(), CliError> {
    let svg = plot::render(&table::read(input)?, log_y)?;
    write_file(out, &svg)
}

/// Run the self-test and report; `Ok(false)` when a section failed.
pub fn cmd_selftest(log: &mut dyn Write) -> bool {
    let reports = run_selftest(&CodeStabilizers);
    for r in &reports {
        let _ = writeln!(
            log,
            "[{}] {}: {} ({:.2}s)",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail,
            r.elapsed.as_secs_f64()
        );
    }
    reports.iter().all(|r| r.passed)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Sweep(args) => {
            let plan = args.resolve()?;
            cmd_sweep(&plan, err)?;
            let _ = writeln!(
                out,
                "wrote {} and {}",
                plan.out.display(),
                manifest_path(&plan.out).display()
            );
            Ok(())
        }
        Command::Threshold { input, out: path } => {
            let estimate = cmd_threshold(&input)?;
            let json = serde_json::to_string_pretty(&estimate)
                .map_err(|e| CliError::Io(e.to_string()))?
                + "\n";
            if let Some(path) = path {
                write_file(&path, &json)?;
            }
            let _ = out.write_all(json.as_bytes());
            Ok(())
        }
        Command::Plot {
            input,
            out: path,
            log_y,
        } => {
            let path = path.unwrap_or_else(|| input.with_extension("svg"));
            cmd_plot(&input, &path, log_y)?;
            let _ = writeln!(out, "wrote {}", path.display());
            Ok(())
        }
        Command::Selftest => {
            if cmd_selftest(out) {
                Ok(())
            } else {
                Err(CliError::Invariant("self-test failed".into()))
            }
        }
    }
}

/// Parse `argv` and run; returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
            } else {
                let _ = write!(out, "{}", e.render());
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
