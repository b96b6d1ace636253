// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::SpecError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Linear,
    Log,
}

/// Closed range sampled at `steps` points, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub scale: Scale,
}

impl Axis {
    pub fn linear(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps, scale: Scale::Linear }
    }

    pub fn log(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps, scale: Scale::Log }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(SpecError::EmptyRange { min: self.min, max: self.max });
        }
        if self.steps < 2 {
            return Err(SpecError::TooFewSteps(self.steps));
        }
        if self.scale == Scale::Log && self.min <= 0.0 {
            return Err(SpecError::NonPositiveLogAxis(self.min));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k == 0 {
                    return self.min;
                }
                if k + 1 == self.steps {
                    return self.max;
                }
                let t = k as f64 / last;
                match self.scale {
                    Scale::Linear => self.min + t * (self.max - self.min),
                    Scale::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_exact() {
        let v = Axis::log(0.01, 100.0, 5).values();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], 0.01);
        assert_eq!(v[4], 100.0);
        assert!((v[2] - 1.0).abs() < 1e-14);
        assert_eq!(Axis::linear(0.0, 1.0, 3).values(), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn invalid_axes() {
        assert!(Axis::linear(1.0, 1.0, 4).validate().is_err());
        assert!(Axis::linear(0.0, 1.0, 1).validate().is_err());
        assert!(Axis::log(0.0, 1.0, 4).validate().is_err());
        assert!(Axis::log(0.1, 1.0, 4).validate().is_ok());
    }
}
