use std::ops::{Add, Index, IndexMut, Sub};

use crate::error::{Error, Result};
use crate::scalar::{DualNumber, DualQuaternion, Quaternion};

use super::APPRECIABLE_TOL;

/// Dense column vector of dual quaternions (length ≥ 1).
#[derive(Debug, Clone, PartialEq)]
pub struct DQVector {
    entries: Vec<DualQuaternion>,
}

impl DQVector {
    pub fn new(entries: Vec<DualQuaternion>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        Ok(DQVector { entries })
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> DualQuaternion) -> Self {
        assert!(n >= 1, "DQVector length must be at least one");
        DQVector { entries: (0..n).map(f).collect() }
    }

    pub fn zeros(n: usize) -> Self {
        DQVector::from_fn(n, |_| DualQuaternion::ZERO)
    }

    /// Standard basis vector `e_k` with `1̂` in position `k`.
    pub fn basis(n: usize, k: usize) -> Self {
        DQVector::from_fn(n, |i| if i == k { DualQuaternion::ONE } else { DualQuaternion::ZERO })
    }

    /// Builds `st + du·ε` from separate quaternion vectors.
    pub fn from_parts(st: &[Quaternion], du: &[Quaternion]) -> Result<Self> {
        if st.len() != du.len() {
            return Err(Error::dims(st.len(), du.len()));
        }
        DQVector::new(st.iter().zip(du).map(|(&s, &d)| DualQuaternion::new(s, d)).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; kept for API symmetry with `len`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[DualQuaternion] {
        &self.entries
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [DualQuaternion] {
        &mut self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DualQuaternion> {
        self.entries.iter()
    }

    pub fn into_vec(self) -> Vec<DualQuaternion> {
        self.entries
    }

    pub fn standard_part(&self) -> Vec<Quaternion> {
        self.entries.iter().map(|e| e.st).collect()
    }

    pub fn dual_part(&self) -> Vec<Quaternion> {
        self.entries.iter().map(|e| e.du).collect()
    }

    /// `‖x_st‖₂`
    pub fn st_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.st.norm_sq()).sum::<f64>().sqrt()
    }

    /// `‖x_I‖₂`
    pub fn du_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.du.norm_sq()).sum::<f64>().sqrt()
    }

    pub fn is_appreciable(&self) -> bool {
        self.st_norm() > APPRECIABLE_TOL
    }

    /// `Σ |x_i|²` as a dual number.
    pub fn norm2_sq(&self) -> DualNumber {
        self.entries
            .iter()
            .fold(DualNumber::ZERO, |acc, e| acc + e.magnitude_sq())
    }

    /// Dual-number 2-norm. The appreciable branch is `√(Σ|x_i|²)`; the
    /// infinitesimal branch is `‖x_I‖₂·ε`.
    pub fn norm2(&self) -> DualNumber {
        let st = self.st_norm();
        if st > APPRECIABLE_TOL {
            let dot: f64 = self.entries.iter().map(|e| e.st.dot(e.du)).sum();
            DualNumber::new(st, dot / st)
        } else {
            DualNumber::new(0.0, self.du_norm())
        }
    }

    /// Real Euclidean norm over all `8n` components.
    pub fn norm_2r(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_2r_sq()).sum::<f64>().sqrt()
    }

    /// `x*y = Σ conj(x_i)·y_i`.
    pub fn inner(&self, other: &DQVector) -> Result<DualQuaternion> {
        if self.len() != other.len() {
            return Err(Error::dims(self.len(), other.len()));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(DualQuaternion::ZERO, |acc, (a, b)| acc + a.conj() * *b))
    }

    /// `x·λ`
    pub fn scale(&self, lambda: DualNumber) -> DQVector {
        self.map(|e| e * lambda)
    }

    /// `x·q` (right multiplication of every entry).
    pub fn mul_right(&self, q: DualQuaternion) -> DQVector {
        self.map(|e| e * q)
    }

    pub fn conj_entries(&self) -> DQVector {
        self.map(|e| e.conj())
    }

    pub fn map(&self, f: impl Fn(DualQuaternion) -> DualQuaternion) -> DQVector {
        DQVector { entries: self.entries.iter().map(|&e| f(e)).collect() }
    }

    pub fn approx_eq(&self, other: &DQVector, tol: f64) -> bool {
        self.len() == other.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.approx_eq(b, tol))
    }
}

impl Index<usize> for DQVector {
    type Output = DualQuaternion;
    fn index(&self, i: usize) -> &DualQuaternion {
        &self.entries[i]
    }
}

impl IndexMut<usize> for DQVector {
    fn index_mut(&mut self, i: usize) -> &mut DualQuaternion {
        &mut self.entries[i]
    }
}

impl<'a> Add<&'a DQVector> for &'a DQVector {
    type Output = DQVector;
    fn add(self, rhs: &DQVector) -> DQVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        DQVector { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| *a + *b).collect() }
    }
}

impl<'a> Sub<&'a DQVector> for &'a DQVector {
    type Output = DQVector;
    fn sub(self, rhs: &DQVector) -> DQVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        DQVector { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| *a - *b).collect() }
    }
}

impl<'a> IntoIterator for &'a DQVector {
    type Item = &'a DualQuaternion;
    type IntoIter = std::slice::Iter<'a, DualQuaternion>;
    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}
