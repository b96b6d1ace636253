// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Random sampling of the full parameter space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_non_negative, evaluate_rows, RowKey, SpecError, SweepMeta, SweepResult, SweepSpec};
use crate::params::{QubitRates, SystemParams};

/// Recorded in the output metadata of every plane sample.
pub const SAMPLING_LAW: &str = "r1,r2 ~ U[0,1] relabeled so that r2 <= r1 (thermal: U[0,1/2), opposite: r1=1, r2=0); \
Gamma1,Gamma2 ~ log-uniform[1e-2,1e2]; Delta = 0 with probability 1/2, else U(0,10]; \
deph1,deph2 ~ U[0,deph_max] (0 unless enabled); ChaCha8 stream seeded from `seed`";

const LOG_GAMMA: (f64, f64) = (-2.0, 2.0);
const DETUNING_MAX: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanePreset {
    All,
    /// Both reservoirs thermal, `r₁, r₂ < 1/2`.
    Thermal,
    /// `r₁ = 1`, `r₂ = 0` with independent `Γ₁`, `Γ₂`.
    Opposite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneSpec {
    pub samples: usize,
    pub preset: PlanePreset,
    pub seed: u64,
    /// Thread count; not part of the serialized spec since it never changes results.
    #[serde(skip)]
    pub workers: usize,
    /// Force `r₂ = r₁`.
    #[serde(default)]
    pub equal_natures: bool,
    /// Upper end of the dephasing distribution; 0 disables dephasing.
    #[serde(default)]
    pub dephasing_max: f64,
}

impl PlaneSpec {
    pub fn new(samples: usize, preset: PlanePreset, seed: u64) -> Self {
        Self { samples, preset, seed, workers: 0, equal_natures: false, dephasing_max: 0.0 }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.samples == 0 {
            return Err(SpecError::NoSamples);
        }
        check_non_negative("dephasing_max", self.dephasing_max)
    }

    /// The sampled parameter points, drawn sequentially from one seeded stream.
    pub fn draw(&self) -> Vec<SystemParams> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.samples).map(|_| self.draw_one(&mut rng)).collect()
    }

    fn draw_one(&self, rng: &mut ChaCha8Rng) -> SystemParams {
        // every draw consumes the same number of variates
        let ra: f64 = rng.random();
        let rb: f64 = rng.random();
        let u1: f64 = rng.random_range(LOG_GAMMA.0..=LOG_GAMMA.1);
        let u2: f64 = rng.random_range(LOG_GAMMA.0..=LOG_GAMMA.1);
        let resonant = rng.random_bool(0.5);
        let det = DETUNING_MAX * (1.0 - rng.random::<f64>());
        let d1: f64 = rng.random();
        let d2: f64 = rng.random();

        let (mut r1, mut r2) = match self.preset {
            PlanePreset::All => (ra.max(rb), ra.min(rb)),
            PlanePreset::Thermal => (0.5 * ra.max(rb), 0.5 * ra.min(rb)),
            PlanePreset::Opposite => (1.0, 0.0),
        };
        if self.equal_natures {
            r2 = r1;
        }
        r1 = r1.clamp(0.0, 1.0);
        r2 = r2.clamp(0.0, 1.0);
        let first = QubitRates::from_reservoir(10f64.powf(u1), r1).with_dephasing(self.dephasing_max * d1);
        let second = QubitRates::from_reservoir(10f64.powf(u2), r2).with_dephasing(self.dephasing_max * d2);
        SystemParams::new(if resonant { 0.0 } else { det }, first, second)
    }
}

pub fn sample_plane(spec: &PlaneSpec) -> Result<SweepResult, SpecError> {
    spec.validate()?;
    let points = spec.draw().into_iter().map(|p| (RowKey::Sample, p)).collect();
    Ok(SweepResult {
        meta: SweepMeta::new(SweepSpec::PlaneSample(spec.clone())),
        rows: evaluate_rows(points, spec.workers)?,
        maxima: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_respect_the_preset() {
        for p in PlaneSpec::new(500, PlanePreset::All, 3).draw() {
            let (r1, r2) = (p.first().nature().unwrap(), p.second().nature().unwrap());
            assert!(r2 <= r1 + 1e-15 && (0.0..=1.0).contains(&r1));
            for q in &p.qubits {
                assert!((1e-2 - 1e-15..=1e2 + 1e-12).contains(&q.broadening()));
                assert_eq!(q.dephasing, 0.0);
            }
            assert!((0.0..=10.0).contains(&p.detuning));
        }
        for p in PlaneSpec::new(200, PlanePreset::Thermal, 3).draw() {
            assert!(p.first().nature().unwrap() < 0.5);
        }
        for p in PlaneSpec::new(50, PlanePreset::Opposite, 3).draw() {
            assert_eq!(p.first().decay, 0.0);
            assert_eq!(p.second().pump, 0.0);
        }
    }

    #[test]
    fn roughly_half_the_points_are_resonant() {
        let pts = PlaneSpec::new(2000, PlanePreset::All, 11).draw();
        let resonant = pts.iter().filter(|p| p.detuning == 0.0).count();
        assert!((850..1150).contains(&resonant), "{resonant}");
    }

    #[test]
    fn same_seed_same_points() {
        let spec = PlaneSpec::new(64, PlanePreset::All, 42);
        assert_eq!(spec.draw(), spec.draw());
        assert_ne!(spec.draw(), PlaneSpec::new(64, PlanePreset::All, 43).draw());
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(matches!(sample_plane(&PlaneSpec::new(0, PlanePreset::All, 1)), Err(SpecError::NoSamples)));
    }
}
