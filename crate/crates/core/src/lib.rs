//! Unitary evolution of two-qubit mixed states under local magnetic fields.
//!
//! Two spins sit in separate fields `n_a`, `n_b`, so `H = sigma . n_a + sigma . n_b` and
//! the propagator factorizes into single-spin rotations. On top of that model the crate
//! provides:
//!
//! - [`states`]: Werner, Gisin-type, `rho3`, product-mixture and pure families, Bell
//!   states, and a reproducible separable-state sampler;
//! - [`dynamics`]: trace distance, the normalized fidelity `tr(rho0 rho(t)) / tr(rho0^2)`,
//!   its short-time decay rate, energy moments and orthogonality times;
//! - [`quantify`]: concurrence, the PPT test, von Neumann entropy, mutual information;
//! - [`angleopt`]: field-angle optimization for kickoff, period and maximal distance;
//! - [`survey`]: per-sample records and summaries for separable-state surveys.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod angleopt;
pub mod dynamics;
mod error;
pub mod linalg;
mod math;
pub mod quantify;
pub mod rng;
pub mod simplex;
pub mod states;
pub mod survey;

pub use angleopt::{evaluate_objective, optimize_angles, Objective, OptimizationResult};
pub use dynamics::{BlochDirection, MagnetConfig, TimeGrid, TimeSeries};
pub use error::{Error, Result};
pub use linalg::{Mat2, Mat4, C64};
pub use states::{build_family, DensityMatrix, Family, FamilySpec, PureState};
