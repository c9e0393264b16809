//! Seeded random instances and dimension sweeps.
//!
//! Instances are drawn from a counter-based ChaCha stream keyed only by
//! the `InstanceSpec`, so every run of the same instance spec yields the
//! same generators on every platform. A sweep walks a grid of (N, trial) cells, verifies the
//! ratio law for every face dimension of every instance, and aggregates
//! the outcomes per (N, k).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exec;
use crate::measure::Vector;
use crate::parallelotope::{
    Generators, ModelError, VerificationReport, DEFAULT_REL_TOLERANCE,
};
use crate::scalar::{ArithmeticMode, Scalar};

/// Independent redraws before an instance spec is declared hopeless.
pub const RETRY_LIMIT: u32 = 1000;

/// Largest N a default sweep visits; full enumeration is exponential in N.
pub const DEFAULT_MAX_DIMENSION: usize = 8;

/// Hard ceiling on sweep dimensions.
pub const HARD_MAX_DIMENSION: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("need 2 <= N <= n, got N={n_generators}, n={ambient_dim}")]
    InvalidShape {
        n_generators: usize,
        ambient_dim: usize,
    },
    #[error("empty entry range: low {low} > high {high}")]
    EmptyEntryRange { low: i64, high: i64 },
    #[error("no independent family in {limit} draws (seed {seed}); widen the entry range")]
    ExhaustedRetries { seed: u64, limit: u32 },
    #[error("sweep range {n_min}..={n_max} invalid: need 2 <= n_min <= n_max <= {cap}")]
    InvalidSweepRange {
        n_min: usize,
        n_max: usize,
        cap: usize,
    },
    #[error("sweep needs at least one trial")]
    NoTrials,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Everything that determines one random instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub n_generators: usize,
    pub ambient_dim: usize,
    /// Integer entries are drawn uniformly from `entry_low..=entry_high`.
    pub entry_low: i64,
    pub entry_high: i64,
    pub seed: u64,
}

impl InstanceSpec {
    fn validate(&self) -> Result<(), HarnessError> {
        if self.n_generators < 2 || self.n_generators > self.ambient_dim {
            return Err(HarnessError::InvalidShape {
                n_generators: self.n_generators,
                ambient_dim: self.ambient_dim,
            });
        }
        if self.entry_low > self.entry_high {
            return Err(HarnessError::EmptyEntryRange {
                low: self.entry_low,
                high: self.entry_high,
            });
        }
        Ok(())
    }
}

/// Draws integer-entry generators until an independent family appears.
/// A degenerate range (for example a single value of 0) exhausts the
/// retry budget and reports [`HarnessError::ExhaustedRetries`].
pub fn random_generators<S: Scalar>(spec: &InstanceSpec) -> Result<Generators<S>, HarnessError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..RETRY_LIMIT {
        let vectors: Vec<Vector<S>> = (0..spec.n_generators)
            .map(|_| {
                let coords: Vec<i128> = (0..spec.ambient_dim)
                    .map(|_| rng.gen_range(spec.entry_low..=spec.entry_high) as i128)
                    .collect();
                Vector::from_ints(&coords)
            })
            .collect();
        match Generators::new(vectors) {
            Ok(g) => return Ok(g),
            Err(ModelError::DegenerateGenerators) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(HarnessError::ExhaustedRetries {
        seed: spec.seed,
        limit: RETRY_LIMIT,
    })
}

/// Mixes the base seed with the (N, trial) cell coordinates so each cell
/// draws from an independent stream (splitmix64 finalizer).
pub fn derive_seed(base: u64, n_generators: usize, trial: u32) -> u64 {
    let mut z = base
        .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(1 + n_generators as u64))
        .wrapping_add(0x517c_c1b7_2722_0a95u64.wrapping_mul(1 + trial as u64));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    /// Random instances per dimension N.
    pub trials: u32,
    pub base_seed: u64,
    pub entry_low: i64,
    pub entry_high: i64,
    /// Float-mode pass tolerance; ignored in exact mode.
    pub rel_tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_min: 2,
            n_max: DEFAULT_MAX_DIMENSION,
            trials: 10,
            base_seed: 0,
            entry_low: -9,
            entry_high: 9,
            rel_tol: DEFAULT_REL_TOLERANCE,
        }
    }
}

impl SweepConfig {
    fn validate(&self) -> Result<(), HarnessError> {
        if self.n_min < 2 || self.n_min > self.n_max || self.n_max > HARD_MAX_DIMENSION {
            return Err(HarnessError::InvalidSweepRange {
                n_min: self.n_min,
                n_max: self.n_max,
                cap: HARD_MAX_DIMENSION,
            });
        }
        if self.trials == 0 {
            return Err(HarnessError::NoTrials);
        }
        if self.entry_low > self.entry_high {
            return Err(HarnessError::EmptyEntryRange {
                low: self.entry_low,
                high: self.entry_high,
            });
        }
        Ok(())
    }
}

/// One verification failure inside a sweep, with everything needed to
/// replay it.
#[derive(Clone, Debug, PartialEq)]
pub struct FailureRecord<S> {
    pub seed: u64,
    pub n_generators: usize,
    pub ambient_dim: usize,
    pub k: usize,
    pub residual: S,
}

/// Aggregate over all trials of one (N, k) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellOutcome<S> {
    pub n_generators: usize,
    pub k: usize,
    pub trials: u32,
    pub passes: u32,
    pub max_residual: S,
    pub failures: Vec<FailureRecord<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary<S> {
    /// Cells ordered by N ascending, then k ascending.
    pub cells: Vec<CellOutcome<S>>,
    pub instances: u64,
    pub reports: u64,
    pub failures: u64,
    pub rel_tol: f64,
    pub mode: ArithmeticMode,
}

impl<S> SweepSummary<S> {
    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}

/// Verifies the ratio law over a grid of random instances.
///
/// One instance is drawn per (N, trial); its ambient dimension cycles
/// through N, N+1, N+2 as the trial index advances, so embedded
/// parallelotopes are exercised alongside full-dimensional ones. Every
/// face dimension of every instance is verified. The per-instance work
/// is data-parallel; aggregation order is fixed by the grid.
pub fn sweep<S: Scalar>(config: &SweepConfig) -> Result<SweepSummary<S>, HarnessError> {
    config.validate()?;

    let mut specs = Vec::new();
    for n in config.n_min..=config.n_max {
        for trial in 0..config.trials {
            specs.push(InstanceSpec {
                n_generators: n,
                ambient_dim: n + (trial as usize % 3),
                entry_low: config.entry_low,
                entry_high: config.entry_high,
                seed: derive_seed(config.base_seed, n, trial),
            });
        }
    }

    let outcomes: Vec<Result<Vec<VerificationReport<S>>, HarnessError>> =
        exec::map_ordered(specs.clone(), |spec: InstanceSpec| {
            let generators = random_generators::<S>(&spec)?;
            Ok(generators.verify_all()?)
        });

    let mut cells: Vec<CellOutcome<S>> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for n in config.n_min..=config.n_max {
        for k in 1..n {
            index.insert((n, k), cells.len());
            cells.push(CellOutcome {
                n_generators: n,
                k,
                trials: config.trials,
                passes: 0,
                max_residual: S::zero(),
                failures: Vec::new(),
            });
        }
    }

    let mut reports = 0u64;
    let mut failures = 0u64;
    for (spec, outcome) in specs.iter().zip(outcomes) {
        for report in outcome? {
            reports += 1;
            let cell = &mut cells[index[&(spec.n_generators, report.k)]];
            if report.residual > cell.max_residual {
                cell.max_residual = report.residual.clone();
            }
            if report.passed(config.rel_tol) {
                cell.passes += 1;
            } else {
                failures += 1;
                cell.failures.push(FailureRecord {
                    seed: spec.seed,
                    n_generators: spec.n_generators,
                    ambient_dim: spec.ambient_dim,
                    k: report.k,
                    residual: report.residual,
                });
            }
        }
    }

    Ok(SweepSummary {
        cells,
        instances: specs.len() as u64,
        reports,
        failures,
        rel_tol: config.rel_tol,
        mode: S::MODE,
    })
}
