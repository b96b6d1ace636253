// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact steady states of two coherently coupled qubits driven by independent
//! incoherent pumping, decay and pure dephasing, with their concurrence,
//! linear entropy and photon-counting correlations.

pub mod analytic;
pub mod cli;
pub mod explore;
pub mod liouvillian;
pub mod metrics;
pub mod params;
pub mod state;
pub mod steady;

pub use liouvillian::{build_liouvillian, Liouvillian};
pub use params::{QubitRates, SystemParams};
pub use state::{observables_from_rho, rho_from_observables, DensityMatrix, SteadyObservables};
pub use steady::solve_steady_state;
