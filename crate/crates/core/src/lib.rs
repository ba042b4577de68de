//! Numerical toolkit for a gate-tunable graphene hypersurface absorber at THz
//! frequencies.
//!
//! - [`material`]: Kubo / Drude sheet conductivity, gate bias field, bulk
//!   equivalent permittivity.
//! - [`solver`]: transfer-matrix reflection, transmission, absorption and
//!   input impedance of layered stacks with conductive sheets.
//! - [`homogenization`]: patch-array sheet impedance, absorber stack builder,
//!   resonance search and calibration.
//! - [`retrieval`]: effective n, z, ε, µ from two-port S-parameters.
//! - [`supercell`]: phase-gradient supercells and anomalous reflection angles.
//! - [`reconfig`]: chemical-potential sweeps of the absorption resonance.
//!
//! All sweeps accept a [`Schedule`]; with the default `parallel` feature they
//! run on rayon, and results are bit-identical to sequential evaluation.

pub mod constants;
mod error;
pub mod homogenization;
pub mod material;
pub mod quadrature;
pub mod reconfig;
pub mod retrieval;
pub mod schedule;
pub mod solver;
pub mod supercell;

pub use error::{Error, Result};
pub use schedule::Schedule;

pub use num_complex::Complex64;
