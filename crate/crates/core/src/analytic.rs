// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form steady states.
//!
//! The general solution is written with effective rates
//!
//! ```text
//! Xᵢ    = (4g²/Γ_{3−i}) / (Γ_tot [1 + (2Δ/Γ_tot)²])
//! Pᵢᵉᶠᶠ = Pᵢ + (P₁ + P₂) Xᵢ,        Γᵢᵉᶠᶠ = Γᵢ + (Γ₁ + Γ₂) Xᵢ
//! ⟨nᵢ⟩  = Pᵢᵉᶠᶠ / Γᵢᵉᶠᶠ
//! ⟨n₁n₂⟩ = (P₁⟨n₂⟩ + P₂⟨n₁⟩) / (Γ₁ + Γ₂)
//! ⟨n₁₂⟩ = 2g(⟨n₁⟩ − ⟨n₂⟩) / (2Δ + iΓ_tot)
//! ```
//!
//! Two one-parameter families are solved in terms of `α = √(Δ² + Γ²)/g`:
//! opposite reservoirs (`P₁ = γ₂ = Γ`, `P₂ = γ₁ = 0`) and the thermal pair
//! `r₁ = 1/2, r₂ = 0` with `Γ₁ = Γ₂`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::SystemParams;
use crate::state::{DensityMatrix, SteadyObservables};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("closed form needs Γ₁, Γ₂ > 0 (got {0}, {1})")]
    DegenerateRates(f64, f64),
    #[error("delta = {delta} outside the domain [{lo}, {hi}] of curve {kind:?}")]
    DeltaOutOfRange { kind: ReferenceCurve, delta: f64, lo: f64, hi: f64 },
}

/// Norm and phase of `α e^{iβ} = (Δ − iΓ)/g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaPoint {
    pub alpha: f64,
    pub beta: f64,
}

impl AlphaPoint {
    /// Resonant point, `β = −π/2`.
    pub fn resonant(alpha: f64) -> Self {
        Self { alpha, beta: -std::f64::consts::FRAC_PI_2 }
    }

    pub fn from_rates(detuning: f64, broadening: f64, g: f64) -> Self {
        Self { alpha: detuning.hypot(broadening) / g, beta: -broadening.atan2(detuning) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveRates {
    pub x1: f64,
    pub x2: f64,
    pub p1_eff: f64,
    pub p2_eff: f64,
    pub g1_eff: f64,
    pub g2_eff: f64,
}

pub fn effective_rates(params: &SystemParams) -> Result<EffectiveRates, AnalyticError> {
    let (b1, b2) = (params.first().broadening(), params.second().broadening());
    if !(b1 > 0.0 && b2 > 0.0) {
        return Err(AnalyticError::DegenerateRates(b1, b2));
    }
    let (p1, p2) = (params.first().pump, params.second().pump);
    let total = params.total_decoherence();
    let lorentz = total * (1.0 + (2.0 * params.detuning / total).powi(2));
    let g2 = 4.0 * params.g * params.g;
    let x1 = g2 / b2 / lorentz;
    let x2 = g2 / b1 / lorentz;
    Ok(EffectiveRates {
        x1,
        x2,
        p1_eff: p1 + (p1 + p2) * x1,
        p2_eff: p2 + (p1 + p2) * x2,
        g1_eff: b1 + (b1 + b2) * x1,
        g2_eff: b2 + (b1 + b2) * x2,
    })
}

pub fn effective_observables(params: &SystemParams) -> Result<SteadyObservables, AnalyticError> {
    let rates = effective_rates(params)?;
    let n1 = rates.p1_eff / rates.g1_eff;
    let n2 = rates.p2_eff / rates.g2_eff;
    let (q1, q2) = (params.first(), params.second());
    let n1n2 = (q1.pump * n2 + q2.pump * n1) / (q1.broadening() + q2.broadening());
    let n12 =
        Complex64::from(2.0 * params.g * (n1 - n2)) / Complex64::new(2.0 * params.detuning, params.total_decoherence());
    Ok(SteadyObservables { n1, n2, n1n2, n12 })
}

/// Opposite-reservoir steady state and its figures of merit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalPoint {
    pub rho: DensityMatrix,
    pub concurrence: f64,
    pub linear_entropy: f64,
    pub delta: f64,
}

pub fn optimal_family(alpha: f64) -> OptimalPoint {
    optimal_family_at(AlphaPoint::resonant(alpha))
}

pub fn optimal_family_at(point: AlphaPoint) -> OptimalPoint {
    let a = point.alpha;
    let d = 4.0 + a * a;
    let c12 = Complex64::from_polar(a / d, -point.beta);
    let rho = DensityMatrix::from_blocks(1.0 / d, (1.0 + a * a) / d, 1.0 / d, 1.0 / d, c12)
        .expect("closed-form state is a valid density matrix");
    OptimalPoint {
        rho,
        concurrence: optimal_concurrence(a),
        linear_entropy: 16.0 / 3.0 * (3.0 + a * a) / (d * d),
        delta: (a / d).powi(2),
    }
}

/// `C(α) = 2 max(0, (α − 1)/(4 + α²))`.
pub fn optimal_concurrence(alpha: f64) -> f64 {
    2.0 * ((alpha - 1.0) / (4.0 + alpha * alpha)).max(0.0)
}

/// Concurrence of the opposite-reservoir family as a function of its linear entropy.
pub fn optimal_concurrence_from_entropy(entropy: f64) -> f64 {
    let x = 0.75 * entropy;
    let root = (1.0 - x).max(0.0).sqrt();
    let num = (2.0 * x * (1.0 - 2.0 * x + root)).max(0.0).sqrt() - x;
    (num / (1.0 + root)).max(0.0)
}

/// `(C, S_L)` for `r₁ = 1/2`, `r₂ = 0`, `Γ₁ = Γ₂ = αg`, `Δ = 0`.
pub fn thermal_family(alpha: f64) -> (f64, f64) {
    let a2 = alpha * alpha;
    let d = 4.0 + a2;
    let c = ((alpha - (2.25 + a2 / 2.0).sqrt()) / d).max(0.0);
    let s = (39.0 + 2.0 * a2 * (9.0 + a2)) / (3.0 * d * d);
    (c, s)
}

/// Comparison curves in the C–δ plane built from mixtures containing `|ψ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceCurve {
    /// Maximally entangled mixed states; vertical at `δ = 1/9` below `C = 2/3`.
    Mems,
    /// `|ψ⟩` mixed with `|φ⟩`: `C = 4δ`.
    PsiPhiMix,
    /// `|ψ⟩` mixed with `|0⟩` or `|3⟩`: `C = 2√δ`.
    Psi03Mix,
    /// `M_ψ`, `|ψ⟩` mixed with `|1⟩`: `C = 1 − √(1 − 4δ)`.
    MPsi,
}

pub fn mems_reference(kind: ReferenceCurve, delta: f64) -> Result<f64, AnalyticError> {
    let lo = if kind == ReferenceCurve::Mems { 1.0 / 9.0 } else { 0.0 };
    let hi = 0.25;
    if !(lo..=hi).contains(&delta) {
        return Err(AnalyticError::DeltaOutOfRange { kind, delta, lo, hi });
    }
    Ok(match kind {
        ReferenceCurve::Mems | ReferenceCurve::Psi03Mix => 2.0 * delta.sqrt(),
        ReferenceCurve::PsiPhiMix => 4.0 * delta,
        ReferenceCurve::MPsi => 1.0 - (1.0 - 4.0 * delta).sqrt(),
    })
}

/// `δ` of the maximally entangled mixed state with concurrence `c`.
pub fn mems_delta(c: f64) -> f64 {
    if c >= 2.0 / 3.0 {
        c * c / 4.0
    } else {
        1.0 / 9.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::observables_from_rho;

    #[test]
    fn uncoupled_qubits_follow_their_baths() {
        let p = SystemParams::from_reservoirs(1.3, 0.8, 2.1, 0.1).with_coupling(0.0);
        let rates = effective_rates(&p).unwrap();
        assert_eq!((rates.x1, rates.x2), (0.0, 0.0));
        let o = effective_observables(&p).unwrap();
        assert!((o.n1 - 0.8).abs() < 1e-15 && (o.n2 - 0.1).abs() < 1e-15);
        assert_eq!(o.n12, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn opposite_reservoirs_share_one_excitation() {
        for (gamma, det) in [(0.3, 0.0), (1.0, 2.0), (7.5, 0.4)] {
            let o = effective_observables(&SystemParams::opposite(gamma, det)).unwrap();
            assert!((o.n1 + o.n2 - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_rates_are_rejected() {
        let mut p = SystemParams::opposite(1.0, 0.0);
        p.qubits[1].decay = 0.0;
        assert!(matches!(effective_observables(&p), Err(AnalyticError::DegenerateRates(..))));
    }

    #[test]
    fn optimal_family_values() {
        let p = optimal_family(0.0);
        assert_eq!(p.rho, DensityMatrix::maximally_mixed());
        assert_eq!((p.concurrence, p.delta), (0.0, 0.0));
        assert!((p.linear_entropy - 1.0).abs() < 1e-15);

        let s5 = 5f64.sqrt();
        let p = optimal_family(1.0 + s5);
        assert!((p.concurrence - (s5 - 1.0) / 4.0).abs() < 1e-15);
        assert!((p.linear_entropy - (17.0 - 3.0 * s5) / 30.0).abs() < 1e-15);

        let o = observables_from_rho(&optimal_family(1.0).rho);
        assert!((o.n12 - Complex64::new(0.0, -0.2)).norm() < 1e-15);
    }

    #[test]
    fn phase_follows_detuning() {
        let a = AlphaPoint::from_rates(0.0, 2.0, 1.0);
        assert_eq!(a.alpha, 2.0);
        assert_eq!(a.beta, -std::f64::consts::FRAC_PI_2);
        let a = AlphaPoint::from_rates(1.0, 1.0, 1.0);
        assert!((a.beta + std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn thermal_family_values() {
        let (c, s) = thermal_family(0.0);
        assert_eq!(c, 0.0);
        assert!((s - 13.0 / 16.0).abs() < 1e-15);
        // threshold where α² = 9/2
        assert_eq!(thermal_family(3.0 / 2f64.sqrt()).0, 0.0);
        assert!(thermal_family(2.2).0 > 0.0);
    }

    #[test]
    fn reference_curves() {
        use ReferenceCurve::*;
        assert_eq!(mems_reference(PsiPhiMix, 0.25).unwrap(), 1.0);
        assert_eq!(mems_reference(MPsi, 0.25).unwrap(), 1.0);
        assert_eq!(mems_reference(Psi03Mix, 1.0 / 16.0).unwrap(), 0.5);
        assert!((mems_reference(Mems, 1.0 / 9.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(mems_reference(Mems, 0.1).is_err());
        assert!(mems_reference(MPsi, 0.3).is_err());
        assert_eq!(mems_delta(0.5), 1.0 / 9.0);
        assert_eq!(mems_delta(1.0), 0.25);
    }
}
