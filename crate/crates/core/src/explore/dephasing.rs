// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Opposite reservoirs (`r₁ = 1, r₂ = 0, Γ₁ = Γ₂ = Γ, Δ = 0`) under equal
//! pure dephasing on both qubits.

use serde::{Deserialize, Serialize};

use super::{
    check_non_negative, evaluate, evaluate_rows, golden_section_max, par_map, Axis, RowKey, SpecError, SweepMeta,
    SweepResult, SweepSpec,
};
use crate::params::SystemParams;

/// Tolerance on `ln Γ` when refining the maxima between grid points.
const REFINE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DephasingSpec {
    pub dephasing: Vec<f64>,
    pub gamma: Axis,
    /// Thread count; not part of the serialized spec since it never changes results.
    #[serde(skip)]
    pub workers: usize,
}

impl DephasingSpec {
    /// `γᵈ = 0, 2g, …, 20g` over `Γ ∈ [10⁻², 10³]g`.
    pub fn standard() -> Self {
        Self { dephasing: (0..=10).map(|k| 2.0 * k as f64).collect(), gamma: Axis::log(1e-2, 1e3, 500), workers: 0 }
    }

    pub fn params(gamma: f64, gamma_d: f64) -> SystemParams {
        SystemParams::opposite(gamma, 0.0).with_dephasing(gamma_d, gamma_d)
    }
}

/// Largest `C` and `δ` over `Γ` for one dephasing rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DephasingMaximum {
    pub gamma_d: f64,
    pub gamma_at_c_max: f64,
    pub c_max: f64,
    pub gamma_at_delta_max: f64,
    pub delta_max: f64,
}

fn concurrence_at(gamma: f64, gamma_d: f64) -> f64 {
    evaluate(&DephasingSpec::params(gamma, gamma_d)).map(|e| e.report.concurrence).unwrap_or(f64::NEG_INFINITY)
}

fn delta_at(gamma: f64, gamma_d: f64) -> f64 {
    evaluate(&DephasingSpec::params(gamma, gamma_d)).map(|e| e.report.delta).unwrap_or(f64::NEG_INFINITY)
}

/// Refines the grid argmax of `f` with a golden-section search between its neighbors.
fn refine(gammas: &[f64], values: &[f64], f: impl Fn(f64) -> f64) -> (f64, f64) {
    let k = values.iter().enumerate().fold(0, |best, (i, v)| if *v > values[best] { i } else { best });
    let lo = gammas[k.saturating_sub(1)];
    let hi = gammas[(k + 1).min(gammas.len() - 1)];
    let (x, fx) = golden_section_max(|u| f(u.exp()), lo.ln(), hi.ln(), REFINE_TOL);
    if fx >= values[k] {
        (x.exp(), fx)
    } else {
        (gammas[k], values[k])
    }
}

pub fn dephasing_sweep(spec: &DephasingSpec) -> Result<SweepResult, SpecError> {
    spec.gamma.validate()?;
    // maxima are refined in ln Γ
    if spec.gamma.min <= 0.0 {
        return Err(SpecError::NonPositiveLogAxis(spec.gamma.min));
    }
    if spec.dephasing.is_empty() {
        return Err(SpecError::NoDephasingValues);
    }
    for &d in &spec.dephasing {
        check_non_negative("dephasing", d)?;
    }
    let gammas = spec.gamma.values();
    let points = spec
        .dephasing
        .iter()
        .flat_map(|&gamma_d| gammas.iter().map(move |&gamma| (gamma_d, gamma)))
        .map(|(gamma_d, gamma)| (RowKey::Dephasing { gamma_d, gamma }, DephasingSpec::params(gamma, gamma_d)))
        .collect();
    let rows = evaluate_rows(points, spec.workers)?;

    let n = gammas.len();
    let curves: Vec<usize> = (0..spec.dephasing.len()).collect();
    let maxima = par_map(&curves, spec.workers, |&k| {
        let gamma_d = spec.dephasing[k];
        let block = &rows[k * n..(k + 1) * n];
        let pick = |f: fn(&crate::metrics::EntanglementReport) -> f64| -> Vec<f64> {
            block.iter().map(|r| r.report().map(f).unwrap_or(f64::NEG_INFINITY)).collect()
        };
        let (gamma_at_c_max, c_max) = refine(&gammas, &pick(|r| r.concurrence), |g| concurrence_at(g, gamma_d));
        let (gamma_at_delta_max, delta_max) = refine(&gammas, &pick(|r| r.delta), |g| delta_at(g, gamma_d));
        DephasingMaximum { gamma_d, gamma_at_c_max, c_max, gamma_at_delta_max, delta_max }
    })?;

    Ok(SweepResult { meta: SweepMeta::new(SweepSpec::Dephasing(spec.clone())), rows, maxima })
}
