//! Eigenvalues of dual quaternion Hermitian matrices.
//!
//! [`power_method`] finds a dominant eigenpair, [`all_eigenpairs`] peels off
//! appreciable eigenpairs one at a time by deflation, [`recover_dual_part`]
//! completes a standard-part eigenpair with its dual part, and
//! [`singular_values`] works through `A*A`.

mod deflation;
mod dual_part;
mod power;

use std::io::Write;
use std::path::Path;

pub use deflation::{all_eigenpairs, singular_values, DeflationOptions};
pub use dual_part::recover_dual_part;
pub use power::{best_rank_one, power_method, power_method_observed};

use crate::error::{Error, Result};
use crate::linalg::{DQMatrix, DQVector};
use crate::par::Execution;
use crate::scalar::DualNumber;

#[derive(Debug, Clone)]
pub struct PowerConfig {
    /// Largest number of vector updates.
    pub max_iters: usize,
    /// Relative stopping tolerance δ on `‖Qv − vλ‖_2R / ‖Q‖_FR`.
    pub tol: f64,
    /// Seed for the random starting vector.
    pub seed: u64,
    /// Starting vector; overrides `seed` when present.
    pub init: Option<DQVector>,
    pub record_trace: bool,
    pub exec: Execution,
}

impl Default for PowerConfig {
    fn default() -> Self {
        PowerConfig {
            max_iters: 5000,
            tol: 1e-8,
            seed: 0,
            init: None,
            record_trace: true,
            exec: Execution::Auto,
        }
    }
}

impl PowerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

/// One power-method step: the residual of the pair `(λ, v)` before `v` is updated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub iter: usize,
    pub residual: f64,
    pub value: DualNumber,
}

#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: DualNumber,
    /// Unit 2-norm eigenvector.
    pub vector: DQVector,
    /// Number of vector updates performed.
    pub iters: usize,
    /// `‖Qv − vλ‖_2R` at exit.
    pub residual: f64,
    pub trace: Vec<TracePoint>,
}

impl EigenPair {
    /// `‖Q·v − v·λ‖_2R` for this pair against any matrix.
    pub fn residual_against(&self, q: &DQMatrix) -> Result<f64> {
        let qv = q.mat_vec(&self.vector)?;
        Ok((&qv - &self.vector.scale(self.value)).norm_2r())
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    /// Appreciable eigenpairs, descending in the dual-number order.
    pub pairs: Vec<EigenPair>,
    /// `‖Q_st‖_F` of the fully deflated matrix.
    pub deflation_residual: f64,
    /// Dimension of the input matrix.
    pub dim: usize,
}

impl SpectrumResult {
    pub fn values(&self) -> Vec<DualNumber> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    /// Eigenvalues padded with zeros up to the matrix dimension, the remaining
    /// eigenvalues being zero to within the deflation tolerance.
    pub fn padded_values(&self) -> Vec<DualNumber> {
        let mut v = self.values();
        v.resize(self.dim.max(v.len()), DualNumber::ZERO);
        v
    }

    pub fn iterations(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.iters).collect()
    }

    /// `Σ λ_i·u_i·u_i*`
    pub fn reconstruct(&self) -> DQMatrix {
        let mut m = DQMatrix::zeros(self.dim, self.dim);
        for p in &self.pairs {
            m.sub_rank_one_assign(-p.value, &p.vector).expect("eigenvector length matches dim");
        }
        m
    }
}

/// Writes a power-method trace as CSV with header `iter,residual_2R,lambda_st,lambda_du`.
pub fn write_trace_to(w: impl Write, trace: &[TracePoint]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["iter", "residual_2R", "lambda_st", "lambda_du"])?;
    for t in trace {
        out.write_record([
            t.iter.to_string(),
            format!("{:?}", t.residual),
            format!("{:?}", t.value.st),
            format!("{:?}", t.value.du),
        ])?;
    }
    out.flush().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(())
}

pub fn write_trace(path: &Path, trace: &[TracePoint]) -> Result<()> {
    write_trace_to(crate::linalg::io::create(path)?, trace)
}
