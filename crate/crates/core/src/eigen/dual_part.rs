use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{DQMatrix, DQVector};
use crate::scalar::{DualNumber, DualQuaternion, Quaternion};

const RANK_TOL: f64 = 1e-10;
const CONSISTENCY_TOL: f64 = 1e-8;

/// Completes a unit standard-part eigenvector `v_st` of `Q_st` to an
/// eigenpair of `Q`.
///
/// `λ_I = v_st*·Q_I·v_st`, and `v_I` is the minimum-norm least-squares
/// solution of `(Q_st − λ_st·I)·v_I = v_st·λ_I − Q_I·v_st` together with the
/// real constraint `Σ sc(v_I,i*·v_st,i) = 0`, solved in the `4n` real
/// embedding. The three remaining directions `v_st·ω` with `ω` a pure
/// quaternion are the gauge freedom and come out zero.
pub fn recover_dual_part(q: &DQMatrix, v_st: &[Quaternion]) -> Result<(DualNumber, DQVector)> {
    let n = q.rows();
    if !q.is_square() || v_st.len() != n {
        return Err(Error::dims(format!("{n}x{n} and {n}"), format!("{}x{} and {}", q.rows(), q.cols(), v_st.len())));
    }
    let lambda_st = quadratic_st(q, v_st, |e| e.st);
    let lambda_du = quadratic_st(q, v_st, |e| e.du);

    let rows = 4 * n + 1;
    let mut a = DMatrix::<f64>::zeros(rows, 4 * n);
    let mut b = DVector::<f64>::zeros(rows);
    for i in 0..n {
        let mut rhs = v_st[i] * lambda_du;
        for j in 0..n {
            let e = q.get(i, j);
            rhs -= e.du * v_st[j];
            let mut coef = e.st;
            if i == j {
                coef -= Quaternion::real(lambda_st);
            }
            put_left_mul(&mut a, 4 * i, 4 * j, coef);
        }
        for (r, c) in rhs.to_array().iter().enumerate() {
            b[4 * i + r] = *c;
        }
        for (r, c) in v_st[i].to_array().iter().enumerate() {
            a[(4 * n, 4 * i + r)] = *c;
        }
    }

    let scale = a.amax().max(1.0);
    let svd = a.clone().svd(true, true);
    let x = svd
        .solve(&b, RANK_TOL * scale)
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let residual = (&a * &x - &b).norm();
    let rank = svd.rank(RANK_TOL * scale);
    // a simple eigenvalue leaves exactly the three gauge directions free
    if rank + 3 < 4 * n && residual > CONSISTENCY_TOL * b.norm().max(1.0) {
        return Err(Error::SingularSystem { rank, residual });
    }

    let v = DQVector::from_fn(n, |i| {
        DualQuaternion::new(v_st[i], Quaternion::new(x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]))
    });
    Ok((DualNumber::new(lambda_st, lambda_du), v))
}

/// `sc(v*·part(Q)·v)` for a quaternion vector.
fn quadratic_st(q: &DQMatrix, v: &[Quaternion], part: impl Fn(&DualQuaternion) -> Quaternion) -> f64 {
    let mut acc = 0.0;
    for (i, vi) in v.iter().enumerate() {
        let mut row = Quaternion::ZERO;
        for (j, vj) in v.iter().enumerate() {
            row += part(&q.get(i, j)) * *vj;
        }
        acc += vi.dot(row);
    }
    acc
}

/// Writes the 4x4 real matrix of `x ↦ c·x` at block `(r0, c0)`.
fn put_left_mul(a: &mut DMatrix<f64>, r0: usize, c0: usize, c: Quaternion) {
    for (k, e) in [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K].into_iter().enumerate() {
        for (r, v) in (c * e).to_array().iter().enumerate() {
            a[(r0 + r, c0 + k)] = *v;
        }
    }
}
