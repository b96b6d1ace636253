// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{check_non_negative, evaluate_rows, Axis, RowKey, SpecError, SweepMeta, SweepResult, SweepSpec};
use crate::params::{QubitRates, SystemParams};

/// Dense `Γ₁ × Γ₂` grid at fixed bath natures, detuning and dephasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r1: f64,
    pub r2: f64,
    pub detuning: f64,
    pub dephasing: f64,
    pub gamma1: Axis,
    pub gamma2: Axis,
    /// Thread count; not part of the serialized spec since it never changes results.
    #[serde(skip)]
    pub workers: usize,
}

impl GridSpec {
    pub fn new(r1: f64, r2: f64, gamma1: Axis, gamma2: Axis) -> Self {
        Self { r1, r2, detuning: 0.0, dephasing: 0.0, gamma1, gamma2, workers: 0 }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        self.gamma1.validate()?;
        self.gamma2.validate()?;
        for (name, r) in [("r1", self.r1), ("r2", self.r2)] {
            if !(0.0..=1.0).contains(&r) {
                return Err(SpecError::InvalidValue { name, value: r });
            }
        }
        check_non_negative("dephasing", self.dephasing)?;
        if !self.detuning.is_finite() {
            return Err(SpecError::InvalidValue { name: "detuning", value: self.detuning });
        }
        Ok(())
    }

    pub fn params_at(&self, gamma1: f64, gamma2: f64) -> SystemParams {
        SystemParams::new(
            self.detuning,
            QubitRates::from_reservoir(gamma1, self.r1).with_dephasing(self.dephasing),
            QubitRates::from_reservoir(gamma2, self.r2).with_dephasing(self.dephasing),
        )
    }
}

/// Rows are ordered with `Γ₁` as the outer (slow) index.
pub fn grid_sweep(spec: &GridSpec) -> Result<SweepResult, SpecError> {
    spec.validate()?;
    let g2 = spec.gamma2.values();
    let points = spec
        .gamma1
        .values()
        .into_iter()
        .flat_map(|a| g2.iter().map(move |&b| (a, b)))
        .map(|(gamma1, gamma2)| (RowKey::Grid { gamma1, gamma2 }, spec.params_at(gamma1, gamma2)))
        .collect();
    Ok(SweepResult {
        meta: SweepMeta::new(SweepSpec::Grid(spec.clone())),
        rows: evaluate_rows(points, spec.workers)?,
        maxima: Vec::new(),
    })
}
