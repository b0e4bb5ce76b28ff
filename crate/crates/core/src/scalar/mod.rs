//! Scalar algebra: dual numbers, quaternions and dual quaternions.
//!
//! All three are small `Copy` values. Equality is componentwise; the
//! `approx_eq` helpers compare with an absolute tolerance.

mod dual;
mod dual_quaternion;
mod quaternion;

pub use dual::DualNumber;
pub use dual_quaternion::DualQuaternion;
pub use quaternion::Quaternion;

/// Tolerance used by [`DualQuaternion::is_unit`] on both unit conditions.
pub const UNIT_TOL: f64 = 1e-9;
