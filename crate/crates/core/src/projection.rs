//! Projections onto unit dual quaternions and unit-norm dual quaternion vectors.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{DQVector, APPRECIABLE_TOL};
use crate::scalar::{DualQuaternion, Quaternion};

/// Nearest unit dual quaternion to `q` under the dual-number distance.
///
/// For appreciable `q` this is `u_st = q_st/|q_st|` and
/// `u_I = q_I/|q_st| − u_st·sc(u_st*·q_I/|q_st|)`. When `q_st = 0` the result
/// is `q_I/|q_I|` with a zero dual part.
pub fn project_unit_dq(q: DualQuaternion) -> Result<DualQuaternion> {
    if !q.st.is_zero() {
        let n = q.st.norm();
        let ust = q.st / n;
        let qi = q.du / n;
        Ok(DualQuaternion::new(ust, qi - ust * ust.dot(qi)))
    } else if !q.du.is_zero() {
        Ok(DualQuaternion::new(q.du / q.du.norm(), Quaternion::ZERO))
    } else {
        Err(Error::ZeroInput)
    }
}

/// Nearest unit 2-norm vector to `q`.
pub fn project_unit_vec(q: &DQVector) -> Result<DQVector> {
    let n = q.st_norm();
    if n > APPRECIABLE_TOL {
        let dot: f64 = q.iter().map(|e| e.st.dot(e.du)).sum();
        let s = dot / (n * n);
        Ok(q.map(|e| {
            let ust = e.st / n;
            DualQuaternion::new(ust, e.du / n - ust * s)
        }))
    } else {
        let m = q.du_norm();
        if m == 0.0 {
            return Err(Error::ZeroInput);
        }
        Ok(q.map(|e| DualQuaternion::new(e.du / m, Quaternion::ZERO)))
    }
}

fn normal_dq<R: Rng + ?Sized>(rng: &mut R) -> DualQuaternion {
    let mut a = [0.0; 8];
    for c in &mut a {
        *c = rng.sample(StandardNormal);
    }
    DualQuaternion::new(
        Quaternion::new(a[0], a[1], a[2], a[3]),
        Quaternion::new(a[4], a[5], a[6], a[7]),
    )
}

/// Projection of a dual quaternion with i.i.d. standard normal components.
pub fn random_unit_dq<R: Rng + ?Sized>(rng: &mut R) -> DualQuaternion {
    loop {
        if let Ok(u) = project_unit_dq(normal_dq(rng)) {
            return u;
        }
    }
}

/// Projection of a length-`n` vector with i.i.d. standard normal components.
pub fn random_unit_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DQVector {
    loop {
        let v = DQVector::from_fn(n, |_| normal_dq(rng));
        if let Ok(u) = project_unit_vec(&v) {
            return u;
        }
    }
}

/// A vector of `n` independent random unit dual quaternions, e.g. poses.
pub fn random_unit_dq_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DQVector {
    DQVector::from_fn(n, |_| random_unit_dq(rng))
}
