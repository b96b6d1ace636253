// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Rate parameters of the two-qubit model.
//!
//! Every rate is expressed in units of the coupling `g`, which defaults to 1.
//! Each qubit has a decay rate `γ`, an incoherent pump rate `P` and a pure
//! dephasing rate `γᵈ`. The reservoir view `(Γ, r)` with `γ = Γ(1 − r)` and
//! `P = Γr` is available through [`QubitRates::from_reservoir`],
//! [`QubitRates::broadening`] and [`QubitRates::nature`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("rate `{name}` must be finite and non-negative, got {value}")]
    InvalidRate { name: &'static str, value: f64 },
    #[error("`{name}` must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
}

/// Incoherent rates acting on a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct QubitRates {
    pub decay: f64,
    pub pump: f64,
    pub dephasing: f64,
}

impl QubitRates {
    pub fn new(decay: f64, pump: f64, dephasing: f64) -> Self {
        Self { decay, pump, dephasing }
    }

    /// Rates from the reservoir strength `Γ` and nature `r`.
    pub fn from_reservoir(broadening: f64, nature: f64) -> Self {
        Self { decay: broadening * (1.0 - nature), pump: broadening * nature, dephasing: 0.0 }
    }

    /// `Γ = γ + P`.
    pub fn broadening(&self) -> f64 {
        self.decay + self.pump
    }

    /// `r = P / Γ`, undefined for a qubit without any reservoir.
    pub fn nature(&self) -> Option<f64> {
        let b = self.broadening();
        (b > 0.0).then(|| self.pump / b)
    }

    pub fn with_dephasing(mut self, dephasing: f64) -> Self {
        self.dephasing = dephasing;
        self
    }
}

/// Full parameter set: coupling, detuning `Δ = ω₁ − ω₂` and the rates of both qubits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub g: f64,
    pub detuning: f64,
    pub qubits: [QubitRates; 2],
}

impl Default for SystemParams {
    fn default() -> Self {
        Self { g: 1.0, detuning: 0.0, qubits: [QubitRates::default(); 2] }
    }
}

impl SystemParams {
    pub fn new(detuning: f64, first: QubitRates, second: QubitRates) -> Self {
        Self { g: 1.0, detuning, qubits: [first, second] }
    }

    /// Resonant qubits (`Δ = 0`) in contact with reservoirs `(Γ₁, r₁)` and `(Γ₂, r₂)`.
    pub fn from_reservoirs(gamma1: f64, r1: f64, gamma2: f64, r2: f64) -> Self {
        Self::new(0.0, QubitRates::from_reservoir(gamma1, r1), QubitRates::from_reservoir(gamma2, r2))
    }

    /// The opposite-reservoir configuration `P₁ = γ₂ = Γ`, `P₂ = γ₁ = 0`.
    pub fn opposite(broadening: f64, detuning: f64) -> Self {
        Self::new(detuning, QubitRates::new(0.0, broadening, 0.0), QubitRates::new(broadening, 0.0, 0.0))
    }

    pub fn with_coupling(mut self, g: f64) -> Self {
        self.g = g;
        self
    }

    pub fn with_detuning(mut self, detuning: f64) -> Self {
        self.detuning = detuning;
        self
    }

    pub fn with_dephasing(mut self, first: f64, second: f64) -> Self {
        self.qubits[0].dephasing = first;
        self.qubits[1].dephasing = second;
        self
    }

    pub fn first(&self) -> &QubitRates {
        &self.qubits[0]
    }

    pub fn second(&self) -> &QubitRates {
        &self.qubits[1]
    }

    /// `Γ_tot = Γ₁ + Γ₂ + γ₁ᵈ + γ₂ᵈ`, the total decoherence of the one-excitation coherence.
    pub fn total_decoherence(&self) -> f64 {
        self.qubits.iter().map(|q| q.broadening() + q.dephasing).sum()
    }

    /// Relabel the qubits. Together with `Δ → −Δ` this is a symmetry of the model.
    pub fn swapped(&self) -> Self {
        Self { g: self.g, detuning: -self.detuning, qubits: [self.qubits[1], self.qubits[0]] }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        for (name, value) in [("g", self.g), ("Delta", self.detuning)] {
            if !value.is_finite() {
                return Err(ParamError::NotFinite { name, value });
            }
        }
        const NAMES: [[&str; 3]; 2] = [["gamma1", "pump1", "deph1"], ["gamma2", "pump2", "deph2"]];
        for (q, names) in self.qubits.iter().zip(NAMES) {
            for (name, value) in names.into_iter().zip([q.decay, q.pump, q.dephasing]) {
                if !(value.is_finite() && value >= 0.0) {
                    return Err(ParamError::InvalidRate { name, value });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reservoir_view_round_trips() {
        let q = QubitRates::from_reservoir(3.0, 0.25);
        assert_eq!(q.decay, 2.25);
        assert_eq!(q.pump, 0.75);
        assert_eq!(q.broadening(), 3.0);
        assert_eq!(q.nature(), Some(0.25));
        assert_eq!(QubitRates::default().nature(), None);
    }

    #[test]
    fn total_decoherence_sums_everything() {
        let p = SystemParams::new(0.3, QubitRates::new(0.2, 0.5, 0.05), QubitRates::new(0.7, 0.1, 0.05));
        assert!((p.total_decoherence() - 1.6).abs() < 1e-15);
    }

    #[test]
    fn rejects_negative_and_nan() {
        let mut p = SystemParams::opposite(1.0, 0.0);
        assert!(p.validate().is_ok());
        p.qubits[1].pump = -1.0;
        assert!(matches!(p.validate(), Err(ParamError::InvalidRate { name: "pump2", .. })));
        let p = SystemParams::opposite(1.0, f64::NAN);
        assert!(matches!(p.validate(), Err(ParamError::NotFinite { .. })));
    }

    #[test]
    fn swap_is_an_involution() {
        let p = SystemParams::from_reservoirs(1.3, 0.8, 2.1, 0.1).with_detuning(0.7).with_dephasing(0.4, 0.2);
        assert_eq!(p.swapped().swapped(), p);
        assert_eq!(p.swapped().first(), p.second());
    }
}
