// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit density matrices and the observable representation of steady states.
//!
//! Basis order is `|0⟩ = |gg⟩, |1⟩ = |eg⟩, |2⟩ = |ge⟩, |3⟩ = |ee⟩`, where the
//! first label belongs to qubit 1.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-9;

/// Entries outside the block structure `{0}, {1, 2}, {3}`.
pub const OFF_BLOCK: [(usize, usize); 5] = [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("matrix is not Hermitian (max |ρ − ρ†| = {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("observables give a negative population ρ{index}{index} = {value:e}")]
    InvalidObservables { index: usize, value: f64 },
}

/// Largest modulus among a set of complex entries.
pub fn max_modulus<'a>(entries: impl IntoIterator<Item = &'a Complex64>) -> f64 {
    entries.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A validated 4×4 density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Matrix4<Complex64>);

impl DensityMatrix {
    pub fn new(m: Matrix4<Complex64>) -> Result<Self, StateError> {
        let herm = max_modulus((m - m.adjoint()).iter());
        if herm > HERMITIAN_TOL {
            return Err(StateError::NotHermitian(herm));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(StateError::BadTrace(tr.re));
        }
        let rho = Self(m);
        let min = rho.eigenvalues()[0];
        if min < -PSD_TOL {
            return Err(StateError::NotPositive(min));
        }
        Ok(rho)
    }

    /// Builds the block-form state from its five independent entries.
    pub fn from_blocks(p00: f64, p11: f64, p22: f64, p33: f64, c12: Complex64) -> Result<Self, StateError> {
        let mut m = Matrix4::from_diagonal(&Vector4::new(p00, p11, p22, p33).map(Complex64::from));
        m[(1, 2)] = c12;
        m[(2, 1)] = c12.conj();
        Self::new(m)
    }

    pub fn diagonal(p: [f64; 4]) -> Result<Self, StateError> {
        Self::from_blocks(p[0], p[1], p[2], p[3], Complex64::new(0.0, 0.0))
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix4::identity() * Complex64::from(0.25))
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) state vector.
    pub fn pure(psi: &Vector4<Complex64>) -> Result<Self, StateError> {
        let psi = psi / Complex64::from(psi.norm());
        Self::new(psi * psi.adjoint())
    }

    /// Convex combination `Σ wᵢ ρᵢ`; weights must sum to one.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<Self, StateError> {
        let m = parts.iter().fold(Matrix4::zeros(), |acc, (w, rho)| acc + rho.0 * Complex64::from(*w));
        Self::new(m)
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    /// Real diagonal entry `ρᵢᵢ`.
    pub fn population(&self, i: usize) -> f64 {
        self.0[(i, i)].re
    }

    /// The one-excitation coherence `ρ₁₂`.
    pub fn coherence(&self) -> Complex64 {
        self.0[(1, 2)]
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let ev = self.0.symmetric_eigenvalues();
        let mut out = [ev[0], ev[1], ev[2], ev[3]];
        out.sort_by(f64::total_cmp);
        out
    }

    /// Largest modulus among the entries that vanish in block form.
    pub fn block_violation(&self) -> f64 {
        OFF_BLOCK.iter().map(|&(i, j)| self.0[(i, j)].norm().max(self.0[(j, i)].norm())).fold(0.0, f64::max)
    }

    /// The state with the two qubits relabeled (`|1⟩ ↔ |2⟩`).
    pub fn swapped(&self) -> Self {
        const P: [usize; 4] = [0, 2, 1, 3];
        Self(Matrix4::from_fn(|i, j| self.0[(P[i], P[j])]))
    }

    pub(crate) fn from_matrix_unchecked(m: Matrix4<Complex64>) -> Self {
        Self(m)
    }
}

/// Steady-state averages `⟨n₁⟩, ⟨n₂⟩, ⟨n₁n₂⟩` and the coherence `⟨n₁₂⟩ = ⟨σ₁†σ₂⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyObservables {
    pub n1: f64,
    pub n2: f64,
    pub n1n2: f64,
    pub n12: Complex64,
}

pub fn observables_from_rho(rho: &DensityMatrix) -> SteadyObservables {
    SteadyObservables {
        n1: rho.population(1) + rho.population(3),
        n2: rho.population(2) + rho.population(3),
        n1n2: rho.population(3),
        n12: rho.coherence().conj(),
    }
}

pub fn rho_from_observables(obs: &SteadyObservables) -> Result<DensityMatrix, StateError> {
    let p = [1.0 - obs.n1 - obs.n2 + obs.n1n2, obs.n1 - obs.n1n2, obs.n2 - obs.n1n2, obs.n1n2];
    if let Some((index, &value)) = p.iter().enumerate().find(|(_, v)| **v < -1e-12) {
        return Err(StateError::InvalidObservables { index, value });
    }
    DensityMatrix::from_blocks(p[0], p[1], p[2], p[3], obs.n12.conj())
}
