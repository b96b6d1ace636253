// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Traces of the two closed-form families as a function of `α`.
//!
//! Opposite-reservoir rows take their state from the closed form and check it
//! against the numeric solver at `P₁ = γ₂ = αg`; thermal rows take the numeric
//! state at `r₁ = 1/2, r₂ = 0, Γ₁ = Γ₂ = αg` and check `C`, `S_L` against
//! the closed form. A disagreement beyond [`FAMILY_CHECK_TOL`] marks the row.

use serde::{Deserialize, Serialize};

use super::{
    evaluate, par_map, Axis, EvalError, Evaluation, Row, RowKey, SpecError, SweepMeta, SweepResult, SweepSpec,
};
use crate::analytic::{optimal_family, thermal_family};
use crate::params::SystemParams;
use crate::state::max_modulus;

pub const FAMILY_CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Optimal,
    Thermal,
}

impl Family {
    pub fn params(self, alpha: f64) -> SystemParams {
        match self {
            Family::Optimal => SystemParams::opposite(alpha, 0.0),
            Family::Thermal => SystemParams::from_reservoirs(alpha, 0.5, alpha, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub alpha: Axis,
    /// Thread count; not part of the serialized spec since it never changes results.
    #[serde(skip)]
    pub workers: usize,
}

fn optimal_row(alpha: f64, params: &SystemParams) -> Result<Evaluation, EvalError> {
    let closed = optimal_family(alpha);
    let eval = Evaluation::from_state(closed.rho)?;
    // α = 0 has no unique numeric steady state; the closed form is its limit.
    if alpha > 0.0 {
        let numeric = evaluate(params)?;
        let dev = max_modulus((numeric.rho.matrix() - closed.rho.matrix()).iter());
        if dev > FAMILY_CHECK_TOL {
            return Err(EvalError::AnalyticMismatch(dev));
        }
    }
    Ok(eval)
}

fn thermal_row(alpha: f64, params: &SystemParams) -> Result<Evaluation, EvalError> {
    let eval = evaluate(params)?;
    let (c, s) = thermal_family(alpha);
    let dev = (eval.report.concurrence - c).abs().max((eval.report.linear_entropy - s).abs());
    if dev > FAMILY_CHECK_TOL {
        return Err(EvalError::AnalyticMismatch(dev));
    }
    Ok(eval)
}

pub fn family_trace(spec: &FamilySpec) -> Result<SweepResult, SpecError> {
    spec.alpha.validate()?;
    if spec.alpha.min < 0.0 {
        return Err(SpecError::InvalidValue { name: "alpha", value: spec.alpha.min });
    }
    let alphas = spec.alpha.values();
    let family = spec.family;
    let outcomes = par_map(&alphas, spec.workers, |&a| {
        let params = family.params(a);
        let outcome = match family {
            Family::Optimal => optimal_row(a, &params),
            Family::Thermal => thermal_row(a, &params),
        };
        (params, outcome)
    })?;
    let rows = alphas
        .into_iter()
        .zip(outcomes)
        .enumerate()
        .map(|(index, (alpha, (params, outcome)))| Row { index, key: RowKey::Alpha(alpha), params, outcome })
        .collect();
    Ok(SweepResult { meta: SweepMeta::new(SweepSpec::Family(spec.clone())), rows, maxima: Vec::new() })
}
