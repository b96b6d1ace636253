// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Concurrence maximization under the reservoir presets.
//!
//! Each preset maps an unconstrained vector onto physical parameters
//! (`Γ = e^u` clamped to the bounds, `r = sin²θ` scaled to the allowed range).
//! A coarse candidate set is evaluated, the best 32 candidates seed
//! independent Nelder–Mead runs, and the best refined point wins.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::nelder_mead::{minimize, NelderMeadOptions};
use super::{evaluate, par_map, Evaluation, Row, RowKey, SpecError, SweepMeta, SweepResult, SweepSpec};
use crate::metrics::EntanglementReport;
use crate::params::{QubitRates, SystemParams};

const STARTS: usize = 32;
const RANDOM_CANDIDATES: usize = 1024;
const MAX_RESTARTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizePreset {
    /// Free `Γ₁, Γ₂, r₁, r₂, Δ`.
    All,
    /// `Γ₁ = Γ₂`, `r₁, r₂ ≤ 1/2`, `Δ = 0`.
    Thermal,
    /// `r₁ = 1`, `r₂ = 0`, `Γ₁ = Γ₂`, `Δ = 0`.
    Opposite,
    /// `r₁ = 1/2`, `r₂ = 0`, free `Γ₁, Γ₂`, `Δ = 0`.
    ThermalUnequal,
}

impl OptimizePreset {
    fn dimension(self) -> usize {
        match self {
            Self::Opposite => 1,
            Self::ThermalUnequal => 2,
            Self::Thermal => 3,
            Self::All => 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub detuning_max: f64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self { gamma_min: 1e-2, gamma_max: 1e2, detuning_max: 10.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeSpec {
    pub preset: OptimizePreset,
    pub bounds: Bounds,
    pub seed: u64,
    /// Thread count; not part of the serialized spec since it never changes results.
    #[serde(skip)]
    pub workers: usize,
    #[serde(default = "default_x_tol")]
    pub x_tol: f64,
    #[serde(default = "default_f_tol")]
    pub f_tol: f64,
}

fn default_x_tol() -> f64 {
    NelderMeadOptions::default().x_tol
}

fn default_f_tol() -> f64 {
    NelderMeadOptions::default().f_tol
}

impl OptimizeSpec {
    pub fn new(preset: OptimizePreset, seed: u64) -> Self {
        Self { preset, bounds: Bounds::default(), seed, workers: 0, x_tol: default_x_tol(), f_tol: default_f_tol() }
    }

    fn validate(&self) -> Result<(), SpecError> {
        let b = &self.bounds;
        if !(b.gamma_min > 0.0 && b.gamma_min < b.gamma_max && b.gamma_max.is_finite()) {
            return Err(SpecError::EmptyRange { min: b.gamma_min, max: b.gamma_max });
        }
        super::check_non_negative("detuning_max", b.detuning_max)?;
        super::check_non_negative("x_tol", self.x_tol)?;
        super::check_non_negative("f_tol", self.f_tol)
    }

    /// Parameters represented by an unconstrained search vector.
    pub fn params_from(&self, z: &[f64]) -> SystemParams {
        let b = &self.bounds;
        let gamma = |u: f64| u.clamp(b.gamma_min.ln(), b.gamma_max.ln()).exp();
        let nature = |t: f64| t.sin().powi(2);
        match self.preset {
            OptimizePreset::Opposite => SystemParams::opposite(gamma(z[0]), 0.0),
            OptimizePreset::ThermalUnequal => SystemParams::from_reservoirs(gamma(z[0]), 0.5, gamma(z[1]), 0.0),
            OptimizePreset::Thermal => {
                let g = gamma(z[0]);
                SystemParams::from_reservoirs(g, 0.5 * nature(z[1]), g, 0.5 * nature(z[2]))
            }
            OptimizePreset::All => SystemParams::new(
                z[4].clamp(-b.detuning_max, b.detuning_max),
                QubitRates::from_reservoir(gamma(z[0]), nature(z[2])),
                QubitRates::from_reservoir(gamma(z[1]), nature(z[3])),
            ),
        }
    }

    fn candidates(&self) -> Vec<Vec<f64>> {
        let (lo, hi) = (self.bounds.gamma_min.ln(), self.bounds.gamma_max.ln());
        let log_grid = |n: usize| -> Vec<f64> { (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect() };
        let angles = |n: usize| -> Vec<f64> { (0..n).map(|k| FRAC_PI_2 * k as f64 / (n - 1) as f64).collect() };
        match self.preset {
            OptimizePreset::Opposite => log_grid(64).into_iter().map(|u| vec![u]).collect(),
            OptimizePreset::ThermalUnequal => {
                let g = log_grid(24);
                g.iter().flat_map(|&a| g.iter().map(move |&b| vec![a, b])).collect()
            }
            OptimizePreset::Thermal => {
                let (g, t) = (log_grid(16), angles(5));
                let mut out = Vec::new();
                for &u in &g {
                    for &t1 in &t {
                        for &t2 in &t {
                            out.push(vec![u, t1, t2]);
                        }
                    }
                }
                out
            }
            OptimizePreset::All => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                (0..RANDOM_CANDIDATES)
                    .map(|_| {
                        let u1 = rng.random_range(lo..=hi);
                        let u2 = rng.random_range(lo..=hi);
                        let t1 = rng.random_range(0.0..=FRAC_PI_2);
                        let t2 = rng.random_range(0.0..=FRAC_PI_2);
                        let resonant = rng.random_bool(0.5);
                        let d = rng.random_range(0.0..=self.bounds.detuning_max);
                        vec![u1, u2, t1, t2, if resonant { 0.0 } else { d }]
                    })
                    .collect()
            }
        }
    }

    fn objective(&self, z: &[f64]) -> f64 {
        evaluate(&self.params_from(z)).map_or(1.0, |e| -e.report.concurrence)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeOutcome {
    pub params: SystemParams,
    pub evaluation: Evaluation,
    /// Search vector of the optimum.
    pub point: Vec<f64>,
    pub evaluations: usize,
}

impl OptimizeOutcome {
    pub fn report(&self) -> &EntanglementReport {
        &self.evaluation.report
    }
}

fn refine(spec: &OptimizeSpec, start: &[f64]) -> (Vec<f64>, f64, usize) {
    let opts = NelderMeadOptions { x_tol: spec.x_tol, f_tol: spec.f_tol, ..Default::default() };
    let f = |z: &[f64]| spec.objective(z);
    let mut m = minimize(f, start, &opts);
    let mut evals = m.evals;
    // restart from the optimum with a fresh simplex until it stops improving
    for _ in 0..MAX_RESTARTS {
        let again = minimize(f, &m.x, &NelderMeadOptions { step: opts.step * 0.1, ..opts });
        evals += again.evals;
        let gain = m.value - again.value;
        if again.value < m.value {
            m = again;
        }
        if gain < spec.f_tol {
            break;
        }
    }
    (m.x, m.value, evals)
}

pub fn maximize_concurrence(spec: &OptimizeSpec) -> Result<OptimizeOutcome, SpecError> {
    spec.validate()?;
    let candidates = spec.candidates();
    debug_assert!(candidates.iter().all(|c| c.len() == spec.preset.dimension()));
    let scores = par_map(&candidates, spec.workers, |z| spec.objective(z))?;

    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    let starts: Vec<&Vec<f64>> = order.iter().take(STARTS).map(|&i| &candidates[i]).collect();

    let refined = par_map(&starts, spec.workers, |z| refine(spec, z))?;
    let evaluations = candidates.len() + refined.iter().map(|r| r.2).sum::<usize>();
    let (point, _, _) =
        refined.into_iter().reduce(|best, cur| if cur.1 < best.1 { cur } else { best }).expect("at least one start");

    let params = spec.params_from(&point);
    let evaluation = evaluate(&params).map_err(|e| SpecError::Pool(format!("optimum failed to evaluate: {e}")))?;
    Ok(OptimizeOutcome { params, evaluation, point, evaluations })
}

impl OptimizeOutcome {
    /// Single-row sweep result for emission.
    pub fn into_sweep(self, spec: &OptimizeSpec) -> SweepResult {
        SweepResult {
            meta: SweepMeta::new(SweepSpec::Optimize(spec.clone())),
            rows: vec![Row { index: 0, key: RowKey::Optimum, params: self.params, outcome: Ok(self.evaluation) }],
            maxima: Vec::new(),
        }
    }
}
