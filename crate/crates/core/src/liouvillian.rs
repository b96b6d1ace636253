// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Superoperator form of the master equation
//!
//! ```text
//! ∂ₜρ = i[ρ, H] + Σᵢ [ γᵢ/2 𝓛(σᵢ) + Pᵢ/2 𝓛(σᵢ†) + γᵢᵈ/2 𝓛(σᵢ†σᵢ) ] ρ
//! 𝓛(O)ρ = 2OρO† − O†Oρ − ρO†O
//! H = −Δ σ₂†σ₂ + g(σ₁†σ₂ + σ₂†σ₁)
//! ```
//!
//! acting on the column-stacked `vec(ρ)`, where entry `ρᵢⱼ` sits at index
//! `i + 4j`. Products are vectorized with `vec(AρB) = (Bᵀ ⊗ A) vec(ρ)`.

use nalgebra::{Matrix4, SMatrix, SVector};
use num_complex::Complex64;

use crate::params::{ParamError, SystemParams};

pub type SuperMatrix = SMatrix<Complex64, 16, 16>;
pub type SuperVector = SVector<Complex64, 16>;

/// Positions of `ρ₀₀, ρ₁₁, ρ₂₂, ρ₃₃` in `vec(ρ)`.
pub const TRACE_INDICES: [usize; 4] = [0, 5, 10, 15];

#[derive(Debug, Clone, PartialEq)]
pub struct Liouvillian {
    matrix: SuperMatrix,
}

impl Liouvillian {
    pub fn matrix(&self) -> &SuperMatrix {
        &self.matrix
    }

    /// `L · vec(ρ)`.
    pub fn apply(&self, rho: &Matrix4<Complex64>) -> Matrix4<Complex64> {
        unvec(&(self.matrix * vec(rho)))
    }

    /// `‖vec(Tr)ᵀ L‖_∞`, zero for a trace-preserving generator.
    pub fn trace_leak(&self) -> f64 {
        (0..16)
            .map(|col| TRACE_INDICES.iter().map(|&row| self.matrix[(row, col)]).sum::<Complex64>().norm())
            .fold(0.0, f64::max)
    }
}

pub fn vec(m: &Matrix4<Complex64>) -> SuperVector {
    SuperVector::from_column_slice(m.as_slice())
}

pub fn unvec(v: &SuperVector) -> Matrix4<Complex64> {
    Matrix4::from_column_slice(v.as_slice())
}

/// Lowering operators `σ₁` and `σ₂` in the `{|gg⟩, |eg⟩, |ge⟩, |ee⟩}` basis.
pub fn lowering_operators() -> [Matrix4<Complex64>; 2] {
    let one = Complex64::new(1.0, 0.0);
    let mut s1 = Matrix4::zeros();
    s1[(0, 1)] = one; // |eg⟩ → |gg⟩
    s1[(2, 3)] = one; // |ee⟩ → |ge⟩
    let mut s2 = Matrix4::zeros();
    s2[(0, 2)] = one;
    s2[(1, 3)] = one;
    [s1, s2]
}

pub fn hamiltonian(params: &SystemParams) -> Matrix4<Complex64> {
    let [s1, s2] = lowering_operators();
    let g = Complex64::from(params.g);
    (s2.adjoint() * s2) * Complex64::from(-params.detuning) + (s1.adjoint() * s2 + s2.adjoint() * s1) * g
}

/// Jump operators paired with their rates, in the order
/// `σ₁, σ₁†, σ₁†σ₁, σ₂, σ₂†, σ₂†σ₂`.
pub fn jump_operators(params: &SystemParams) -> Vec<(f64, Matrix4<Complex64>)> {
    lowering_operators()
        .into_iter()
        .zip(params.qubits.iter())
        .flat_map(|(s, q)| [(q.decay, s), (q.pump, s.adjoint()), (q.dephasing, s.adjoint() * s)])
        .collect()
}

/// `(Bᵀ ⊗ A)`, the matrix of `ρ ↦ AρB`.
fn sandwich(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> SuperMatrix {
    SuperMatrix::from_fn(|r, c| b[(c / 4, r / 4)] * a[(r % 4, c % 4)])
}

pub fn build_liouvillian(params: &SystemParams) -> Result<Liouvillian, ParamError> {
    params.validate()?;
    let id = Matrix4::<Complex64>::identity();
    let i = Complex64::i();
    let h = hamiltonian(params);

    // i[ρ, H] = i ρH − i Hρ
    let mut matrix = (sandwich(&id, &h) - sandwich(&h, &id)) * i;

    for (rate, op) in jump_operators(params) {
        if rate == 0.0 {
            continue;
        }
        let od = op.adjoint();
        let odo = od * op;
        let lindblad = sandwich(&op, &od) * Complex64::from(2.0) - sandwich(&odo, &id) - sandwich(&id, &odo);
        matrix += lindblad * Complex64::from(rate / 2.0);
    }
    Ok(Liouvillian { matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::QubitRates;

    #[test]
    fn no_dynamics_gives_zero_generator() {
        let p = SystemParams::default().with_coupling(0.0);
        let l = build_liouvillian(&p).unwrap();
        assert!(l.matrix().iter().all(|z| *z == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn vacuum_is_dark_under_decay() {
        let p =
            SystemParams::new(0.0, QubitRates::new(1.0, 0.0, 0.0), QubitRates::new(1.0, 0.0, 0.0)).with_coupling(0.0);
        let l = build_liouvillian(&p).unwrap();
        let mut vac = Matrix4::zeros();
        vac[(0, 0)] = Complex64::new(1.0, 0.0);
        assert!(l.apply(&vac).iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn rejects_negative_rates() {
        let mut p = SystemParams::opposite(1.0, 0.0);
        p.qubits[0].decay = -0.1;
        assert!(build_liouvillian(&p).is_err());
    }

    #[test]
    fn vec_is_column_stacking() {
        let m = Matrix4::from_fn(|i, j| Complex64::new((i + 4 * j) as f64, 0.0));
        let v = vec(&m);
        for k in 0..16 {
            assert_eq!(v[k].re, k as f64);
        }
        assert_eq!(unvec(&v), m);
    }

    #[test]
    fn generator_preserves_trace() {
        let p = SystemParams::new(0.3, QubitRates::new(0.2, 0.5, 0.05), QubitRates::new(0.7, 0.1, 0.05));
        assert!(build_liouvillian(&p).unwrap().trace_leak() <= 1e-12);
    }
}
