// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use nalgebra::Matrix4;
use num_complex::Complex64;
use qpair::{QubitRates, SystemParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rates with log-uniform `Γᵢ ∈ [10⁻², 10²]`, uniform natures,
/// `Δ ∈ [−10, 10]` and `γᵢᵈ ∈ [0, max_deph]`.
pub fn random_params(rng: &mut ChaCha8Rng, max_deph: f64) -> SystemParams {
    let gamma = |rng: &mut ChaCha8Rng| 10f64.powf(rng.random_range(-2.0..=2.0));
    let q1 = QubitRates::from_reservoir(gamma(rng), rng.random()).with_dephasing(max_deph * rng.random::<f64>());
    let q2 = QubitRates::from_reservoir(gamma(rng), rng.random()).with_dephasing(max_deph * rng.random::<f64>());
    SystemParams::new(rng.random_range(-10.0..=10.0), q1, q2)
}

/// Random density matrix `AA†/Tr(AA†)`.
pub fn random_density(rng: &mut ChaCha8Rng) -> Matrix4<Complex64> {
    let a = Matrix4::from_fn(|_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let m = a * a.adjoint();
    let tr = m.trace();
    m / tr
}

pub fn max_abs(m: impl IntoIterator<Item = Complex64>) -> f64 {
    m.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}
