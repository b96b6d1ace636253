// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact stationary state of a [`Liouvillian`].
//!
//! The first row of `L·x = 0` is replaced by the trace condition
//! `x₀ + x₅ + x₁₀ + x₁₅ = 1` and the system is solved by LU with partial
//! pivoting, followed by a few rounds of residual correction. Uniqueness is
//! decided beforehand from the singular values of the unconstrained `L`.

use nalgebra::Matrix4;
use num_complex::Complex64;
use thiserror::Error;

use crate::liouvillian::{unvec, vec, Liouvillian, SuperVector, TRACE_INDICES};
use crate::state::{max_modulus, DensityMatrix, StateError, PSD_TOL};

/// A singular value below `RANK_TOL · σ_max` counts as zero.
pub const RANK_TOL: f64 = 1e-10;
/// Bound on `‖L·vec(ρ)‖_∞`, scaled by the largest entry of `L` when that exceeds one.
pub const RESIDUAL_TOL: f64 = 1e-11;
const REFINE_STEPS: usize = 2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("steady state is not unique ({null_dim} vanishing singular values)")]
    NonUniqueSteadyState { null_dim: usize },
    #[error("solution is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("steady-state residual {0:e} exceeds tolerance")]
    Residual(f64),
    #[error("constrained system is singular")]
    Singular,
    #[error(transparent)]
    State(StateError),
}

impl SolveError {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::NonUniqueSteadyState { .. } => "NonUniqueSteadyState",
            Self::NotPositive(_) => "NotPositive",
            Self::Residual(_) => "Residual",
            Self::Singular => "Singular",
            Self::State(_) => "InvalidState",
        }
    }
}

/// Number of singular values of `L` below `RANK_TOL · σ_max`.
pub fn null_space_dimension(liouvillian: &Liouvillian) -> usize {
    let sv = liouvillian.matrix().singular_values();
    let smax = sv.max();
    if smax == 0.0 {
        return 16;
    }
    sv.iter().filter(|&&s| s < RANK_TOL * smax).count()
}

pub fn solve_steady_state(liouvillian: &Liouvillian) -> Result<DensityMatrix, SolveError> {
    let null_dim = null_space_dimension(liouvillian);
    if null_dim != 1 {
        return Err(SolveError::NonUniqueSteadyState { null_dim });
    }

    let l = liouvillian.matrix();
    let mut a = *l;
    let one = Complex64::new(1.0, 0.0);
    a.row_mut(0).fill(Complex64::new(0.0, 0.0));
    for &k in &TRACE_INDICES {
        a[(0, k)] = one;
    }
    let mut b = SuperVector::zeros();
    b[0] = one;

    let lu = a.lu();
    let mut x = lu.solve(&b).ok_or(SolveError::Singular)?;
    for _ in 0..REFINE_STEPS {
        let r = b - a * x;
        match lu.solve(&r) {
            Some(dx) => x += dx,
            None => break,
        }
    }

    let m = unvec(&x);
    let mut m: Matrix4<Complex64> = (m + m.adjoint()) * Complex64::from(0.5);
    let tr = m.trace().re;
    m /= Complex64::from(tr);

    let scale = max_modulus(l.iter()).max(1.0);
    let residual = max_modulus((l * vec(&m)).iter());
    if residual > RESIDUAL_TOL * scale {
        return Err(SolveError::Residual(residual));
    }

    let rho = DensityMatrix::from_matrix_unchecked(m);
    let min = rho.eigenvalues()[0];
    if min < -PSD_TOL {
        return Err(SolveError::NotPositive(min));
    }
    DensityMatrix::new(m).map_err(SolveError::State)
}
