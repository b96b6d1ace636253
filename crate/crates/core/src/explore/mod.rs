// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Parameter-space exploration: random planes, dense grids, analytic family
//! traces, dephasing sweeps and concurrence maximization.
//!
//! Rows are evaluated on a worker pool and always returned in index order, so
//! a result depends only on its spec (and seed), never on the worker count.

mod axis;
mod dephasing;
mod family;
mod grid;
pub mod nelder_mead;
mod optimize;
mod sample;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::liouvillian::build_liouvillian;
use crate::metrics::{EntanglementReport, MetricError};
use crate::params::{ParamError, SystemParams};
use crate::state::{observables_from_rho, DensityMatrix, SteadyObservables};
use crate::steady::{solve_steady_state, SolveError};

pub use axis::{Axis, Scale};
pub use dephasing::{dephasing_sweep, DephasingMaximum, DephasingSpec};
pub use family::{family_trace, Family, FamilySpec, FAMILY_CHECK_TOL};
pub use grid::{grid_sweep, GridSpec};
pub use nelder_mead::golden_section_max;
pub use optimize::{maximize_concurrence, Bounds, OptimizeOutcome, OptimizePreset, OptimizeSpec};
pub use sample::{sample_plane, PlanePreset, PlaneSpec, SAMPLING_LAW};

/// Version of the row/column layout written by the emitters.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("axis range [{min}, {max}] is empty")]
    EmptyRange { min: f64, max: f64 },
    #[error("axis needs at least 2 steps, got {0}")]
    TooFewSteps(usize),
    #[error("logarithmic axis needs a positive lower end, got {0}")]
    NonPositiveLogAxis(f64),
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("{name} must be finite and non-negative, got {value}")]
    InvalidValue { name: &'static str, value: f64 },
    #[error("no dephasing values given")]
    NoDephasingValues,
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("numeric and closed-form results differ by {0:e}")]
    AnalyticMismatch(f64),
}

impl EvalError {
    /// Short error tag written into output rows.
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Params(_) => "InvalidParams",
            Self::Solve(e) => e.tag(),
            Self::Metric(MetricError::NotBlockForm(_)) => "NotBlockForm",
            Self::Metric(_) => "Metric",
            Self::AnalyticMismatch(_) => "AnalyticMismatch",
        }
    }
}

/// Steady state of one parameter point with its observables and metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub rho: DensityMatrix,
    pub observables: SteadyObservables,
    pub report: EntanglementReport,
}

impl Evaluation {
    pub fn from_state(rho: DensityMatrix) -> Result<Self, MetricError> {
        Ok(Self { observables: observables_from_rho(&rho), report: EntanglementReport::from_state(&rho)?, rho })
    }
}

/// Numeric pipeline: Liouvillian, steady state, metrics.
pub fn evaluate(params: &SystemParams) -> Result<Evaluation, EvalError> {
    let l = build_liouvillian(params)?;
    let rho = solve_steady_state(&l)?;
    Ok(Evaluation::from_state(rho)?)
}

/// Coordinates identifying a row within its sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKey {
    Sample,
    Grid { gamma1: f64, gamma2: f64 },
    Alpha(f64),
    Dephasing { gamma_d: f64, gamma: f64 },
    Optimum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub index: usize,
    pub key: RowKey,
    pub params: SystemParams,
    pub outcome: Result<Evaluation, EvalError>,
}

impl Row {
    pub fn report(&self) -> Option<&EntanglementReport> {
        self.outcome.as_ref().ok().map(|e| &e.report)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SweepSpec {
    PlaneSample(PlaneSpec),
    Grid(GridSpec),
    Family(FamilySpec),
    Dephasing(DephasingSpec),
    Optimize(OptimizeSpec),
}

impl SweepSpec {
    pub fn seed(&self) -> Option<u64> {
        match self {
            Self::PlaneSample(s) => Some(s.seed),
            Self::Optimize(s) => Some(s.seed),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta {
    pub version: String,
    pub schema_version: u32,
    pub seed: Option<u64>,
    pub spec: SweepSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling_law: Option<String>,
}

impl SweepMeta {
    pub fn new(spec: SweepSpec) -> Self {
        let sampling_law = matches!(spec, SweepSpec::PlaneSample(_)).then(|| SAMPLING_LAW.to_string());
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema_version: SCHEMA_VERSION,
            seed: spec.seed(),
            spec,
            sampling_law,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub meta: SweepMeta,
    pub rows: Vec<Row>,
    /// Per-dephasing maxima; empty for other sweeps.
    pub maxima: Vec<DephasingMaximum>,
}

impl SweepResult {
    /// Successful rows only.
    pub fn evaluated(&self) -> impl Iterator<Item = (&Row, &Evaluation)> {
        self.rows.iter().filter_map(|r| r.outcome.as_ref().ok().map(|e| (r, e)))
    }

    /// Row with the largest concurrence, ties resolved by lowest index.
    pub fn best(&self) -> Option<(&Row, &Evaluation)> {
        self.evaluated().fold(None, |best, cur| match best {
            Some(b) if b.1.report.concurrence >= cur.1.report.concurrence => Some(b),
            _ => Some(cur),
        })
    }
}

/// Runs `f` over `items` on `workers` threads (0 picks the rayon default)
/// and returns results in input order.
pub(crate) fn par_map<T, R, F>(items: &[T], workers: usize, f: F) -> Result<Vec<R>, SpecError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| SpecError::Pool(e.to_string()))?;
    Ok(pool.install(|| items.par_iter().map(&f).collect()))
}

pub(crate) fn evaluate_rows(points: Vec<(RowKey, SystemParams)>, workers: usize) -> Result<Vec<Row>, SpecError> {
    let outcomes = par_map(&points, workers, |(_, p)| evaluate(p))?;
    Ok(points
        .into_iter()
        .zip(outcomes)
        .enumerate()
        .map(|(index, ((key, params), outcome))| Row { index, key, params, outcome })
        .collect())
}

pub(crate) fn check_non_negative(name: &'static str, value: f64) -> Result<(), SpecError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(SpecError::InvalidValue { name, value })
    }
}
