use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::par::{for_each_row, Execution};
use crate::scalar::{DualNumber, DualQuaternion, Quaternion};

use super::{DQVector, APPRECIABLE_TOL, HERMITIAN_TOL};

/// Dense row-major matrix of dual quaternions.
#[derive(Debug, Clone, PartialEq)]
pub struct DQMatrix {
    rows: usize,
    cols: usize,
    data: Vec<DualQuaternion>,
}

impl DQMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<DualQuaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!("{rows}x{cols} = {} entries", rows * cols), data.len()));
        }
        Ok(DQMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DQMatrix { rows, cols, data: vec![DualQuaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        DQMatrix::from_fn(n, n, |i, j| if i == j { DualQuaternion::ONE } else { DualQuaternion::ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> DualQuaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DQMatrix { rows, cols, data }
    }

    /// Diagonal matrix with dual-number entries.
    pub fn from_diagonal(diag: &[DualNumber]) -> Self {
        let n = diag.len();
        DQMatrix::from_fn(n, n, |i, j| if i == j { diag[i].into() } else { DualQuaternion::ZERO })
    }

    /// Assembles `st + du·ε` from quaternion matrices given row-major.
    pub fn from_parts(rows: usize, cols: usize, st: &[Quaternion], du: &[Quaternion]) -> Result<Self> {
        if st.len() != rows * cols || du.len() != rows * cols {
            return Err(Error::dims(rows * cols, format!("{} / {}", st.len(), du.len())));
        }
        DQMatrix::new(rows, cols, st.iter().zip(du).map(|(&s, &d)| DualQuaternion::new(s, d)).collect())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> DualQuaternion {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: DualQuaternion) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[DualQuaternion] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn as_slice(&self) -> &[DualQuaternion] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<DualQuaternion> {
        self.data
    }

    pub fn conj_transpose(&self) -> DQMatrix {
        DQMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    fn check_same_shape(&self, other: &DQMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dims(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &DQMatrix) -> Result<DQMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect();
        Ok(DQMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &DQMatrix) -> Result<DQMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect();
        Ok(DQMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: f64) -> DQMatrix {
        DQMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&e| e * s).collect() }
    }

    /// `y = Q·x`, `y_i = Σ_j Q_ij·x_j`.
    pub fn mat_vec(&self, x: &DQVector) -> Result<DQVector> {
        self.mat_vec_with(x, Execution::Auto)
    }

    pub fn mat_vec_with(&self, x: &DQVector, exec: Execution) -> Result<DQVector> {
        if x.len() != self.cols {
            return Err(Error::dims(self.cols, x.len()));
        }
        let mut out = DQVector::zeros(self.rows);
        let xs = x.as_slice();
        // one output entry per "row" of width 1
        for_each_row(out.as_mut_slice(), 1, exec, |i, slot| {
            slot[0] = row_times(self.row(i), xs);
        });
        Ok(out)
    }

    pub fn mat_mul(&self, other: &DQMatrix) -> Result<DQMatrix> {
        if self.cols != other.rows {
            return Err(Error::dims(format!("{} rows", self.cols), format!("{} rows", other.rows)));
        }
        let mut out = DQMatrix::zeros(self.rows, other.cols);
        let cols = other.cols;
        for_each_row(&mut out.data, cols, Execution::Auto, |i, row| {
            for (k, a) in self.row(i).iter().enumerate() {
                for (slot, b) in row.iter_mut().zip(other.row(k)) {
                    *slot += *a * *b;
                }
            }
        });
        Ok(out)
    }

    /// `λ·u·u*`, built so that the result is exactly Hermitian.
    pub fn rank_one(lambda: DualNumber, u: &DQVector) -> DQMatrix {
        let n = u.len();
        let mut m = DQMatrix::zeros(n, n);
        let us = u.as_slice();
        for_each_row(&mut m.data, n, Execution::Auto, |i, row| {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = rank_one_entry(lambda, us, i, j);
            }
        });
        m
    }

    /// In-place `Q ← Q − λ·u·u*`.
    pub fn sub_rank_one_assign(&mut self, lambda: DualNumber, u: &DQVector) -> Result<()> {
        if !self.is_square() || u.len() != self.rows {
            return Err(Error::dims(format!("{}x{}", u.len(), u.len()), format!("{}x{}", self.rows, self.cols)));
        }
        let n = self.cols;
        let us = u.as_slice();
        for_each_row(&mut self.data, n, Execution::Auto, |i, row| {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot -= rank_one_entry(lambda, us, i, j);
            }
        });
        Ok(())
    }

    /// Largest componentwise deviation `|Q_ij − conj(Q_ji)|`; infinite when not square.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let a = self.get(i, j).to_array();
                let b = self.get(j, i).conj().to_array();
                for (x, y) in a.iter().zip(&b) {
                    dev = dev.max((x - y).abs());
                }
            }
        }
        dev
    }

    /// Hermitian within `1e-10`, relative to the largest entry when that exceeds one.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITIAN_TOL * self.max_abs().max(1.0)
    }

    pub fn check_hermitian(&self) -> Result<()> {
        let dev = self.hermitian_deviation();
        if dev <= HERMITIAN_TOL * self.max_abs().max(1.0) {
            Ok(())
        } else {
            Err(Error::NotHermitian(dev))
        }
    }

    /// `(Q + Q*)/2`
    pub fn hermitian_part(&self) -> Result<DQMatrix> {
        Ok(self.add(&self.conj_transpose())?.scale(0.5))
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .flat_map(|e| e.to_array())
            .fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// `‖Q_st‖_F`
    pub fn st_norm_f(&self) -> f64 {
        self.data.iter().map(|e| e.st.norm_sq()).sum::<f64>().sqrt()
    }

    /// `‖Q_I‖_F`
    pub fn du_norm_f(&self) -> f64 {
        self.data.iter().map(|e| e.du.norm_sq()).sum::<f64>().sqrt()
    }

    pub fn is_appreciable(&self) -> bool {
        self.st_norm_f() > APPRECIABLE_TOL
    }

    /// Dual-number F-norm: `‖Q_st‖_F + sc(tr(Q_st*·Q_I))/‖Q_st‖_F·ε`, or `‖Q_I‖_F·ε`.
    pub fn norm_f(&self) -> DualNumber {
        let st = self.st_norm_f();
        if st > APPRECIABLE_TOL {
            DualNumber::new(st, self.sc_trace_st_du() / st)
        } else {
            DualNumber::new(0.0, self.du_norm_f())
        }
    }

    /// F*-norm: `‖Q_st‖_F + ‖Q_I‖_F²/(2‖Q_st‖_F)·ε`, or `‖Q_I‖_F·ε`.
    pub fn norm_fstar(&self) -> DualNumber {
        let st = self.st_norm_f();
        let du = self.du_norm_f();
        if st > APPRECIABLE_TOL {
            DualNumber::new(st, du * du / (2.0 * st))
        } else {
            DualNumber::new(0.0, du)
        }
    }

    /// `√(‖Q_st‖_F² + ‖Q_I‖_F²)`
    pub fn norm_fr(&self) -> f64 {
        self.data.iter().map(|e| e.norm_2r_sq()).sum::<f64>().sqrt()
    }

    /// `‖Q‖_F²` as a dual number, `‖Q_st‖_F² + 2·sc(tr(Q_st*·Q_I))·ε`.
    pub fn norm_f_sq(&self) -> DualNumber {
        self.data.iter().fold(DualNumber::ZERO, |acc, e| acc + e.magnitude_sq())
    }

    /// `sc(tr(Q_st*·Q_I)) = Σ_ij sc(conj(st_ij)·du_ij)`
    pub fn sc_trace_st_du(&self) -> f64 {
        self.data.iter().map(|e| e.st.dot(e.du)).sum()
    }

    /// `x*·Q·x`, which for Hermitian `Q` is a dual number.
    pub fn quadratic_form(&self, x: &DQVector) -> Result<DualNumber> {
        let qx = self.mat_vec(x)?;
        let v = x.inner(&qx)?;
        let scale = v.scalar_part().st.abs().max(v.scalar_part().du.abs()).max(1.0);
        let vec_part = v.vector_part_norm();
        if vec_part > super::SCALAR_TOL * scale {
            return Err(Error::NotScalar(vec_part));
        }
        Ok(v.scalar_part())
    }

    pub fn approx_eq(&self, other: &DQMatrix, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }
}

#[inline]
fn row_times(row: &[DualQuaternion], x: &[DualQuaternion]) -> DualQuaternion {
    let mut acc = DualQuaternion::ZERO;
    for (a, b) in row.iter().zip(x) {
        acc += *a * *b;
    }
    acc
}

#[inline]
fn rank_one_entry(lambda: DualNumber, u: &[DualQuaternion], i: usize, j: usize) -> DualQuaternion {
    if i <= j {
        (u[i] * lambda) * u[j].conj()
    } else {
        ((u[j] * lambda) * u[i].conj()).conj()
    }
}

impl Index<(usize, usize)> for DQMatrix {
    type Output = DualQuaternion;
    fn index(&self, (i, j): (usize, usize)) -> &DualQuaternion {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DQMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut DualQuaternion {
        &mut self.data[i * self.cols + j]
    }
}
