use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use xcube::code::Sector;
use xcube::harness::{SweepConfig, Variant};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "xcube",
    version,
    about = "Threshold sweeps for X-cube matching decoders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate failure rates over a grid of sizes and error rates.
    Sweep(SweepArgs),
    /// Estimate the threshold from a sweep CSV.
    Threshold {
        /// Sweep CSV to read.
        input: PathBuf,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a sweep CSV as an SVG chart.
    Plot {
        /// Sweep CSV to read.
        input: PathBuf,
        /// SVG path; defaults to the input path with an `.svg` extension.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Logarithmic failure-rate axis.
        #[arg(long)]
        log_y: bool,
    },
    /// Run the fast invariant checks.
    Selftest,
}

/// Sweep options. Every field may also come from `--config`; flags win.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepArgs {
    /// Error type: `x` or `z`.
    #[arg(long)]
    pub sector: Option<String>,
    /// Decoder: `plain`, `corner` (x only) or `iterative` (z only).
    #[arg(long)]
    pub variant: Option<String>,
    /// Re-weighted rounds for `--variant iterative`.
    #[arg(long)]
    pub iters: Option<usize>,
    /// Comma-separated lattice sizes.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// Smallest physical error rate.
    #[arg(long)]
    pub pmin: Option<f64>,
    /// Largest physical error rate.
    #[arg(long)]
    pub pmax: Option<f64>,
    /// Number of error rates, endpoints included.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Trials per point.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output CSV; the manifest goes next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads, 0 for one per core.
    #[arg(long)]
    pub workers: Option<usize>,
    /// JSON file with any of the above keys.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

/// A fully resolved sweep invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub config: SweepConfig,
    pub out: PathBuf,
    pub workers: usize,
}

pub const DEFAULT_SIZES: [usize; 3] = [8, 12, 16];
pub const DEFAULT_STEPS: usize = 6;
pub const DEFAULT_TRIALS: u64 = 5000;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl SweepArgs {
    /// Fill unset flags from `file`.
    pub fn overlay(self, file: SweepArgs) -> SweepArgs {
        SweepArgs {
            sector: self.sector.or(file.sector),
            variant: self.variant.or(file.variant),
            iters: self.iters.or(file.iters),
            sizes: self.sizes.or(file.sizes),
            pmin: self.pmin.or(file.pmin),
            pmax: self.pmax.or(file.pmax),
            steps: self.steps.or(file.steps),
            trials: self.trials.or(file.trials),
            seed: self.seed.or(file.seed),
            out: self.out.or(file.out),
            workers: self.workers.or(file.workers),
            config: self.config,
        }
    }

    pub fn load_config(path: &Path) -> Result<SweepArgs, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("--config: cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| usage(format!("--config: {}: {e}", path.display())))
    }

    /// Merge with `--config` and check every flag.
    pub fn resolve(self) -> Result<SweepPlan, CliError> {
        let args = match &self.config {
            Some(path) => {
                let file = Self::load_config(path)?;
                self.overlay(file)
            }
            None => self,
        };
        let sector = match args.sector.as_deref() {
            Some("x") | Some("X") => Sector::X,
            Some("z") | Some("Z") => Sector::Z,
            Some(other) => {
                return Err(usage(format!(
                    "--sector: expected `x` or `z`, got `{other}`"
                )))
            }
            None => return Err(usage("--sector is required")),
        };
        let name = args.variant.clone().unwrap_or_else(|| {
            match sector {
                Sector::X => "corner",
                Sector::Z => "plain",
            }
            .to_string()
        });
        if args.iters.is_some() && name != "iterative" {
            return Err(usage("--iters only applies to --variant iterative"));
        }
        let variant = Variant::parse(&name, args.iters.unwrap_or(0)).map_err(|_| {
            usage(format!(
                "--variant: expected plain, corner or iterative, got `{name}`"
            ))
        })?;
        if !variant.supports(sector) {
            return Err(usage(format!(
                "--variant {name} does not apply to --sector {sector}"
            )));
        }
        let sizes = args.sizes.unwrap_or_else(|| DEFAULT_SIZES.to_vec());
        if sizes.is_empty() {
            return Err(usage("--sizes must list at least one size"));
        }
        if let Some(l) = sizes.iter().find(|&&l| l < 2) {
            return Err(usage(format!("--sizes: size {l} is below 2")));
        }
        let pmin = args.pmin.ok_or_else(|| usage("--pmin is required"))?;
        let pmax = args.pmax.ok_or_else(|| usage("--pmax is required"))?;
        for (flag, p) in [("--pmin", pmin), ("--pmax", pmax)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(usage(format!("{flag}: {p} is not a probability")));
            }
        }
        if pmin > pmax {
            return Err(usage(format!("--pmin {pmin} exceeds --pmax {pmax}")));
        }
        let steps = args.steps.unwrap_or(DEFAULT_STEPS);
        if steps < 2 {
            return Err(usage(format!("--steps must be at least 2, got {steps}")));
        }
        let trials = args.trials.unwrap_or(DEFAULT_TRIALS);
        if trials < 1 {
            return Err(usage("--trials must be at least 1"));
        }
        let out = args.out.ok_or_else(|| usage("--out is required"))?;
        let config = SweepConfig {
            sector,
            variant,
            sizes,
            pmin,
            pmax,
            steps,
            trials,
            seed: args.seed.unwrap_or(0),
        };
        config.validate().map_err(|e| usage(e.to_string()))?;
        Ok(SweepPlan {
            config,
            out,
            workers: args.workers.unwrap_or(0),
        })
    }
}
