// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Entanglement and photon-counting figures of merit.
//!
//! For block-form states the concurrence reduces to
//! `C = 2 max(0, |ρ₁₂| − √(ρ₀₀ρ₃₃))`; the general Wootters construction is
//! kept alongside it as an independent route. The Bell-state weight
//! decomposition writes
//!
//! ```text
//! ρ = ρ₀₀|0⟩⟨0| + ρ₃₃|3⟩⟨3| + R₁|1⟩⟨1| + R₂|2⟩⟨2| + R_ψ|ψ⟩⟨ψ|
//! ```
//!
//! with `|ψ⟩ = (|1⟩ + e^{iφ}|2⟩)/√2`, and normalizes the weights by
//! `ρ₀₀ + ρ₃₃ + |R₁| + |R₂| + R_ψ`.

use nalgebra::{Matrix4, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::state::{observables_from_rho, DensityMatrix, SteadyObservables};

/// Allowed departure from block form, `max |ρ₀₁|, |ρ₀₂|, |ρ₀₃|, |ρ₁₃|, |ρ₂₃|`.
pub const BLOCK_TOL: f64 = 1e-10;
/// Eigenvalues of `ρ T ρ* T` in `[−EIGEN_CLAMP, 0)` are rounding and clamp to zero.
pub const EIGEN_CLAMP: f64 = 1e-12;
/// Largest `δ` reachable by a steady state of the model.
pub const DELTA_MAX: f64 = 1.0 / 16.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("state is not in block form (off-block entry {0:e})")]
    NotBlockForm(f64),
    #[error("delta = {delta} outside [{lo}, {hi}]")]
    DeltaOutOfRange { delta: f64, lo: f64, hi: f64 },
    #[error("spin-flip product has eigenvalue {0:e} < 0")]
    NegativeSpinFlipEigenvalue(f64),
}

fn ensure_block(rho: &DensityMatrix) -> Result<(), MetricError> {
    let v = rho.block_violation();
    if v > BLOCK_TOL {
        Err(MetricError::NotBlockForm(v))
    } else {
        Ok(())
    }
}

/// `T = σ_y ⊗ σ_y`, anti-diagonal `{−1, 1, 1, −1}`.
fn spin_flip() -> Matrix4<Complex64> {
    let mut t = Matrix4::zeros();
    for (i, s) in [-1.0, 1.0, 1.0, -1.0].into_iter().enumerate() {
        t[(i, 3 - i)] = Complex64::from(s);
    }
    t
}

/// Eigenvalues of `ρ T ρ* T` in decreasing order, clamped at zero.
pub fn spin_flip_eigenvalues(rho: &DensityMatrix) -> Result<[f64; 4], MetricError> {
    let m = rho.matrix();
    let t = spin_flip();
    let product = m * t * m.conjugate() * t;
    let (_, tri) = Schur::new(product).unpack();
    let mut lambda = [0.0; 4];
    for (i, l) in lambda.iter_mut().enumerate() {
        let v = tri[(i, i)].re;
        if v < -EIGEN_CLAMP {
            return Err(MetricError::NegativeSpinFlipEigenvalue(v));
        }
        *l = v.max(0.0);
    }
    lambda.sort_by(|a, b| b.total_cmp(a));
    Ok(lambda)
}

/// Eigenvalues of `ρ` at or below this are treated as exact zeros when
/// forming `√ρ`.
const RANK_CUTOFF: f64 = 1e-14;

/// Square roots of the spin-flip eigenvalues, in decreasing order.
///
/// They are the singular values of `τ = Wᵀ T W` with `ρ = W W†`, which avoids
/// taking square roots of eigenvalues that are zero up to rounding.
pub fn spin_flip_roots(rho: &DensityMatrix) -> [f64; 4] {
    let eig = rho.matrix().symmetric_eigen();
    let mut w = eig.eigenvectors;
    for (k, &p) in eig.eigenvalues.iter().enumerate() {
        let scale = if p > RANK_CUTOFF { p.sqrt() } else { 0.0 };
        w.column_mut(k).scale_mut(scale);
    }
    let tau = w.transpose() * spin_flip() * w;
    let sv = tau.singular_values();
    let mut s = [sv[0], sv[1], sv[2], sv[3]];
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Wootters concurrence of an arbitrary two-qubit state.
pub fn concurrence_general(rho: &DensityMatrix) -> Result<f64, MetricError> {
    // consistency check on the spectrum of ρ T ρ* T itself
    spin_flip_eigenvalues(rho)?;
    let s = spin_flip_roots(rho);
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}

pub fn concurrence_block(rho: &DensityMatrix) -> Result<f64, MetricError> {
    ensure_block(rho)?;
    let spurious = (rho.population(0) * rho.population(3)).max(0.0).sqrt();
    Ok(2.0 * (rho.coherence().norm() - spurious).max(0.0))
}

/// `S_L = 4/3 (1 − Tr ρ²)`.
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    // Tr ρ² = Σᵢⱼ |ρᵢⱼ|² for Hermitian ρ
    let purity: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    4.0 / 3.0 * (1.0 - purity)
}

/// Bell-state weights `R₁, R₂, R_ψ`, their normalized versions and the phase of `ρ₁₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RDecomposition {
    pub r1: f64,
    pub r2: f64,
    pub r_psi: f64,
    pub rt1: f64,
    pub rt2: f64,
    pub rt_psi: f64,
    /// Non-entangled share, `1 − R̃_ψ`.
    pub rt: f64,
    /// `arg ρ₁₂` in `(−π, π]`, zero when the coherence vanishes.
    pub psi_phase: f64,
}

pub fn r_decomposition(rho: &DensityMatrix) -> Result<RDecomposition, MetricError> {
    ensure_block(rho)?;
    let c = rho.coherence();
    let modulus = c.norm();
    let r1 = rho.population(1) - modulus;
    let r2 = rho.population(2) - modulus;
    let r_psi = 2.0 * modulus;
    let norm = rho.population(0) + rho.population(3) + r1.abs() + r2.abs() + r_psi;
    let rt_psi = r_psi / norm;
    let psi_phase = if modulus == 0.0 { 0.0 } else { c.arg() };
    Ok(RDecomposition {
        r1,
        r2,
        r_psi,
        rt1: r1.abs() / norm,
        rt2: r2.abs() / norm,
        rt_psi,
        rt: 1.0 - rt_psi,
        psi_phase,
    })
}

/// `δ = ⟨n₁⟩⟨n₂⟩ − ⟨n₁n₂⟩`.
pub fn delta_correlator(obs: &SteadyObservables) -> f64 {
    let delta = obs.n1 * obs.n2 - obs.n1n2;
    debug_assert!({
        // ρ₁₁ρ₂₂ − ρ₀₀ρ₃₃ in terms of the same observables
        let p00 = 1.0 - obs.n1 - obs.n2 + obs.n1n2;
        let alt = (obs.n1 - obs.n1n2) * (obs.n2 - obs.n1n2) - p00 * obs.n1n2;
        (alt - delta).abs() <= 1e-12
    });
    delta
}

/// Zero-delay cross correlation `g₁₂⁽²⁾(0) = 1 − δ/(⟨n₁⟩⟨n₂⟩)`; `None` without emission.
pub fn g2_cross(obs: &SteadyObservables) -> Option<f64> {
    let intensity = obs.n1 * obs.n2;
    (intensity != 0.0).then(|| 1.0 - delta_correlator(obs) / intensity)
}

/// Lower and upper concurrence allowed by a measured `δ ∈ [0, 1/16]`.
///
/// These are the two branches of the opposite-reservoir curve,
/// `C±(δ) = 2√δ − 4δ/(1 ± √(1 − 16δ))`, floored at zero.
pub fn c_bounds(delta: f64) -> Result<(f64, f64), MetricError> {
    if !(0.0..=DELTA_MAX).contains(&delta) {
        return Err(MetricError::DeltaOutOfRange { delta, lo: 0.0, hi: DELTA_MAX });
    }
    if delta == 0.0 {
        return Ok((0.0, 0.0));
    }
    let s = (1.0 - 16.0 * delta).max(0.0).sqrt();
    let root = 2.0 * delta.sqrt();
    let lower = (root - 4.0 * delta / (1.0 - s)).max(0.0);
    let upper = (root - 4.0 * delta / (1.0 + s)).max(0.0);
    Ok((lower, upper))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub concurrence: f64,
    pub linear_entropy: f64,
    pub delta: f64,
    pub g2_cross: Option<f64>,
    pub weights: RDecomposition,
}

impl EntanglementReport {
    /// Full report for a block-form state.
    pub fn from_state(rho: &DensityMatrix) -> Result<Self, MetricError> {
        let obs = observables_from_rho(rho);
        Ok(Self {
            concurrence: concurrence_block(rho)?,
            linear_entropy: linear_entropy(rho),
            delta: delta_correlator(&obs),
            g2_cross: g2_cross(&obs),
            weights: r_decomposition(rho)?,
        })
    }
}
