//! Dense dual quaternion vectors and matrices.
//!
//! Dual-number valued norms use the two-branch definitions: the appreciable
//! branch when the standard part has norm above [`APPRECIABLE_TOL`], the
//! infinitesimal branch otherwise.

pub mod io;
mod matrix;
mod vector;

pub use matrix::DQMatrix;
pub use vector::DQVector;

/// A vector or matrix is appreciable when its standard part exceeds this norm.
pub const APPRECIABLE_TOL: f64 = 1e-12;

/// Componentwise tolerance for `Q_ij = conj(Q_ji)`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Largest vector part accepted when a quadratic form is read as a dual number.
pub const SCALAR_TOL: f64 = 1e-9;
