//! Monte Carlo trials, failure-rate sweeps and threshold estimation.

mod selftest;
mod stats;
mod threshold;


pub use selftest::{run_selftest, CodeStabilizers, SectionReport, StabilizerSource};
pub use stats::{wilson_interval, WILSON_Z};
pub use threshold::{estimate_threshold, PairCrossing, ThresholdEstimate};

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{conjugate_logical, extract_syndrome, logical_failure, CodeError, Sector};
use crate::fracton::{FractonDecoder, FractonError};
use crate::lattice::{Lattice, LatticeError};
use crate::lineon::{LineonDecoder, LineonError, LineonWeights};
use crate::noise::{derive_seed, sample, InvalidRate, NoiseSpec};

/// Decoder family for a sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Manhattan weights in either sector.
    Plain,
    /// Turn-penalized weights with free turns at waypoints (X sector).
    Corner,
    /// Manhattan round followed by `k` re-weighted rounds (Z sector).
    Iterative(usize),
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Corner => "corner",
            Variant::Iterative(_) => "iterative",
        }
    }

    pub fn iterations(self) -> usize {
        match self {
            Variant::Iterative(k) => k,
            _ => 0,
        }
    }

    /// Build from a name and an iteration count; the count only applies to
    /// `iterative`.
    pub fn parse(name: &str, iterations: usize) -> Result<Self, HarnessError> {
        match name {
            "plain" => Ok(Variant::Plain),
            "corner" => Ok(Variant::Corner),
            "iterative" => Ok(Variant::Iterative(iterations)),
            other => Err(HarnessError::Config(format!("unknown variant `{other}`"))),
        }
    }

    pub fn supports(self, sector: Sector) -> bool {
        !matches!(
            (self, sector),
            (Variant::Corner, Sector::Z) | (Variant::Iterative(_), Sector::X)
        )
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Iterative(k) => write!(f, "iterative({k})"),
            v => f.write_str(v.name()),
        }
    }
}

impl FromStr for Variant {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(k) = s
            .strip_prefix("iterative(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let k = k
                .parse()
                .map_err(|_| HarnessError::Config(format!("bad iteration count in `{s}`")))?;
            return Ok(Variant::Iterative(k));
        }
        Variant::parse(s, 0)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Rate(#[from] InvalidRate),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Lineon(#[from] LineonError),
    #[error(transparent)]
    Fracton(#[from] FractonError),
    #[error("decoder left {0} defects (L={1}, p={2}, seed={3})")]
    ResidualSyndrome(usize, usize, f64, u64),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("no crossing in the sampled range")]
    NoCrossing,
}

impl HarnessError {
    /// Whether the error is a broken decoder or code invariant, as opposed to
    /// bad input.
    pub fn is_invariant_failure(&self) -> bool {
        matches!(
            self,
            HarnessError::Code(_)
                | HarnessError::Lineon(_)
                | HarnessError::Fracton(_)
                | HarnessError::ResidualSyndrome(..)
        )
    }
}

/// Outcome of one decode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub size: usize,
    pub p: f64,
    pub sector: Sector,
    pub variant: Variant,
    pub trial: u64,
    pub seed: u64,
    /// Residual syndrome empty and no logical failure.
    pub success: bool,
    pub vertex_defects: usize,
    pub cell_defects: usize,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Sample, decode and judge one error drawn from `seed`.
pub fn run_trial(
    size: usize,
    p: f64,
    sector: Sector,
    variant: Variant,
    seed: u64,
) -> Result<TrialRecord, HarnessError> {
    if !variant.supports(sector) {
        return Err(HarnessError::Config(format!(
            "variant {variant} does not apply to the {sector} sector"
        )));
    }
    let start = Instant::now();
    let lattice = Lattice::new(size)?;
    let error = sample(&NoiseSpec::new(p, sector, seed)?, lattice);
    let syndrome = extract_syndrome(&error)?;
    let correction = match (sector, variant) {
        (Sector::X, Variant::Corner) => {
            LineonDecoder::new(LineonWeights::CornerPenalty)
                .decode(&lattice, &syndrome)?
                .correction
        }
        (Sector::X, _) => {
            LineonDecoder::new(LineonWeights::Manhattan)
                .decode(&lattice, &syndrome)?
                .correction
        }
        (Sector::Z, v) => {
            FractonDecoder::new(v.iterations())
                .decode(&lattice, &syndrome)?
                .correction
        }
    };
    let residual = error.composed(&correction);
    let left = extract_syndrome(&residual)?;
    if !left.is_empty() {
        return Err(HarnessError::ResidualSyndrome(
            left.vertex_defects.len() + left.cell_defects.len(),
            size,
            p,
            seed,
        ));
    }
    let failed = logical_failure(&residual, &[conjugate_logical(&lattice, sector)])?;
    Ok(TrialRecord {
        size,
        p,
        sector,
        variant,
        trial: 0,
        seed,
        success: !failed,
        vertex_defects: syndrome.vertex_defects.len(),
        cell_defects: syndrome.cell_defects.len(),
        wall_time: start.elapsed(),
    })
}

/// Trial `trial` of a sweep under `master_seed`. The seed depends on the
/// trial index only, so every `(L, p)` point and every variant sees the same
/// generator keys.
pub fn run_indexed_trial(
    size: usize,
    p: f64,
    sector: Sector,
    variant: Variant,
    master_seed: u64,
    trial: u64,
) -> Result<TrialRecord, HarnessError> {
    let mut record = run_trial(size, p, sector, variant, derive_seed(master_seed, trial))?;
    record.trial = trial;
    Ok(record)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub sector: Sector,
    pub variant: Variant,
    pub sizes: Vec<usize>,
    pub pmin: f64,
    pub pmax: f64,
    pub steps: usize,
    pub trials: u64,
    pub seed: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.sizes.is_empty() {
            return bad("sizes must not be empty".into());
        }
        if let Some(&l) = self.sizes.iter().find(|&&l| l < 2) {
            return bad(format!("size {l} is below 2"));
        }
        if self.steps < 2 {
            return bad(format!("steps must be at least 2, got {}", self.steps));
        }
        if self.trials < 1 {
            return bad("trials must be at least 1".into());
        }
        for (name, p) in [("pmin", self.pmin), ("pmax", self.pmax)] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} = {p} is not a probability"));
            }
        }
        if self.pmin > self.pmax {
            return bad(format!("pmin {} exceeds pmax {}", self.pmin, self.pmax));
        }
        if !self.variant.supports(self.sector) {
            return bad(format!(
                "variant {} does not apply to the {} sector",
                self.variant, self.sector
            ));
        }
        Ok(())
    }

    /// The `steps` evenly spaced error rates from `pmin` to `pmax`.
    pub fn p_grid(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.pmax
                } else {
                    self.pmin + (self.pmax - self.pmin) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

/// Aggregated outcome at one `(L, p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub size: usize,
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    pub failure_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl PointResult {
    pub fn new(size: usize, p: f64, trials: u64, failures: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(failures, trials);
        PointResult {
            size,
            p,
            trials,
            failures,
            failure_rate: if trials == 0 {
                0.0
            } else {
                failures as f64 / trials as f64
            },
            ci_low,
            ci_high,
        }
    }

    /// Binomial standard error of the failure rate.
    pub fn std_error(&self) -> f64 {
        let f = self.failure_rate;
        (f * (1.0 - f) / self.trials as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    /// Points ordered by size, then by `p`.
    pub points: Vec<PointResult>,
}

/// Failures among trials `0..trials` at one point, run on the current rayon
/// pool.
pub fn count_failures(
    size: usize,
    p: f64,
    sector: Sector,
    variant: Variant,
    master_seed: u64,
    trials: u64,
) -> Result<u64, HarnessError> {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            run_indexed_trial(size, p, sector, variant, master_seed, t)
                .map(|r| u64::from(!r.success))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Run every point of `config` with `workers` threads (0 picks the number of
/// cores). The result does not depend on the worker count.
pub fn sweep(config: &SweepConfig, workers: usize) -> Result<SweepResult, HarnessError> {
    sweep_with_progress(config, workers, |_| {})
}

/// [`sweep`] reporting each finished point.
pub fn sweep_with_progress(
    config: &SweepConfig,
    workers: usize,
    mut progress: impl FnMut(&PointResult),
) -> Result<SweepResult, HarnessError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| HarnessError::Config(format!("worker pool: {e}")))?;
    let mut points = Vec::new();
    for &size in &config.sizes {
        for p in config.p_grid() {
            let failures = pool.install(|| {
                count_failures(
                    size,
                    p,
                    config.sector,
                    config.variant,
                    config.seed,
                    config.trials,
                )
            })?;
            let point = PointResult::new(size, p, config.trials, failures);
            progress(&point);
            points.push(point);
        }
    }
    Ok(SweepResult {
        config: config.clone(),
        points,
    })
}
