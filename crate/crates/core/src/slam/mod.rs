//! Pose-graph SLAM as rank-one dual quaternion matrix completion.
//!
//! Poses `p_i` are observed through relative measurements
//! `q_ij = conj(p_i)·p_j`, the entries of `X = x·x*` with `x = conj(p)`.
//! [`solve`] alternates between the unit-entry Hermitian set (X1) and
//! rank-one matrices (X2) under a growing quadratic penalty, then reads the
//! poses off the rank-one factor.

mod problem;

use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use problem::{
    add_noise, build_problem, pose_matrix, read_problem, read_problem_from, write_problem, write_problem_to,
    PoseGraph,
};

use crate::eigen::{power_method, EigenPair, PowerConfig};
use crate::error::{Error, Result};
use crate::linalg::{io, DQMatrix, DQVector};
use crate::par::{for_each_row, Execution};
use crate::projection::{project_unit_dq, random_unit_vec};
use crate::scalar::{DualNumber, DualQuaternion};

/// How the X1 step combines the two orientations of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum X1Update {
    /// Computes `i < j` from `q_ij`, `conj(q_ji)`, `x2_ij` and `conj(x2_ji)`, and
    /// mirrors it, so X1 stays Hermitian under noise.
    #[default]
    Symmetrized,
    /// Uses `q_ji` and `x2_ji` unconjugated, entry by entry.
    Literal,
}

/// Right-alignment used by the pose error `e_x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GaugeAlignment {
    /// `x·conj(x_i)/|x_i|`, which removes a common right factor exactly.
    #[default]
    Conjugate,
    /// `x·x_i/|x_i|`
    Literal,
}

#[derive(Debug, Clone)]
pub struct SlamConfig {
    pub rho0: f64,
    pub rho1: f64,
    pub max_iters: usize,
    /// Stop once `‖X1 − X2‖_FR ≤ beta`.
    pub beta: f64,
    /// Inner power method for the X2 step; `init` and `seed` are overridden.
    pub power: PowerConfig,
    pub seed: u64,
    pub x1_update: X1Update,
    pub exec: Execution,
}

impl Default for SlamConfig {
    fn default() -> Self {
        SlamConfig {
            rho0: 0.01,
            rho1: 1.1,
            max_iters: 1000,
            beta: 1e-5,
            power: PowerConfig { tol: 1e-10, max_iters: 2000, record_trace: false, ..PowerConfig::default() },
            seed: 0,
            x1_update: X1Update::Symmetrized,
            exec: Execution::Auto,
        }
    }
}

impl SlamConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho0 > 0.0) {
            return Err(Error::InvalidConfig(format!("rho0 must be positive, got {}", self.rho0)));
        }
        if !(self.rho1 > 1.0) {
            return Err(Error::InvalidConfig(format!("rho1 must exceed 1, got {}", self.rho1)));
        }
        if !(self.beta > 0.0) {
            return Err(Error::InvalidConfig(format!("beta must be positive, got {}", self.beta)));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        self.power.validate()
    }
}

#[derive(Debug, Clone)]
pub struct SlamResult {
    pub x1: DQMatrix,
    pub x2: DQMatrix,
    pub lambda: DualNumber,
    pub u: DQVector,
    /// `u·√λ`, the factor with `X2 = x·x*`.
    pub x: DQVector,
    pub iters: usize,
    /// `(k, ‖X1^(k) − X2^(k)‖_FR)`
    pub gap_trace: Vec<(usize, f64)>,
    pub converged: bool,
}

impl SlamResult {
    pub fn final_gap(&self) -> f64 {
        self.gap_trace.last().map_or(f64::INFINITY, |g| g.1)
    }

    /// Recovered poses `conj(x_i)`.
    pub fn poses(&self) -> DQVector {
        self.x.conj_entries()
    }
}

/// Closed-form minimizer over the unit-entry Hermitian set with unit diagonal.
pub fn update_x1(p: &PoseGraph, x2: &DQMatrix, rho: f64, mode: X1Update, exec: Execution) -> Result<DQMatrix> {
    let n = p.n();
    if x2.rows() != n || x2.cols() != n {
        return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", x2.rows(), x2.cols())));
    }
    let entry = |i: usize, j: usize| -> Result<DualQuaternion> {
        let (qij, qji) = (p.get(i, j), p.get(j, i));
        let c = 1.0 / (qij.is_some() as u8 as f64 + qji.is_some() as u8 as f64 + 2.0 * rho);
        let mut t = qij.unwrap_or(DualQuaternion::ZERO);
        match mode {
            X1Update::Symmetrized => {
                t += qji.map_or(DualQuaternion::ZERO, |q| q.conj());
                t += (x2.get(i, j) + x2.get(j, i).conj()) * rho;
            }
            X1Update::Literal => {
                t += qji.unwrap_or(DualQuaternion::ZERO);
                t += (x2.get(i, j) + x2.get(j, i)) * rho;
            }
        }
        project_unit_dq(t * c)
    };

    let failure = std::sync::Mutex::new(None);
    let mut data = vec![DualQuaternion::ZERO; n * n];
    for_each_row(&mut data, n, exec, |i, row| {
        for (j, slot) in row.iter_mut().enumerate() {
            let v = if i == j {
                Ok(DualQuaternion::ONE)
            } else if mode == X1Update::Symmetrized && i > j {
                entry(j, i).map(|e| e.conj())
            } else {
                entry(i, j)
            };
            match v {
                Ok(v) => *slot = v,
                Err(e) => {
                    failure.lock().unwrap().get_or_insert(e);
                }
            }
        }
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    DQMatrix::new(n, n, data)
}

/// Best rank-one approximation `λ·u·u*` of X1. A power method that runs out
/// of iterations still yields its best pair.
pub fn update_x2(x1: &DQMatrix, cfg: &PowerConfig) -> Result<(DQMatrix, EigenPair)> {
    let pair = match power_method(x1, cfg) {
        Ok(p) => p,
        Err(Error::NoConvergence(p)) => *p,
        Err(e) => return Err(e),
    };
    Ok((DQMatrix::rank_one(pair.value, &pair.vector), pair))
}

/// Two-block coordinate descent with penalty `ρ^(k) = ρ₁·ρ^(k−1)`.
///
/// `X2` starts as `u·u*` for a random unit vector `u`. Each X2 step warm
/// starts the power method from the previous `u`. Exhausting `max_iters`
/// returns [`Error::SlamNoConvergence`] with the last iterate.
pub fn solve(p: &PoseGraph, cfg: &SlamConfig) -> Result<SlamResult> {
    cfg.validate()?;
    let n = p.n();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut u = random_unit_vec(&mut rng, n);
    let mut lambda = DualNumber::ONE;
    let mut x2 = DQMatrix::rank_one(lambda, &u);
    let mut x1 = x2.clone();
    let mut rho = cfg.rho0;
    let mut gap_trace = Vec::new();
    let mut converged = false;

    for k in 1..=cfg.max_iters {
        x1 = update_x1(p, &x2, rho, cfg.x1_update, cfg.exec)?;
        if cfg.x1_update == X1Update::Literal {
            x1 = x1.hermitian_part()?;
        }
        let power = PowerConfig { init: Some(u.clone()), seed: cfg.seed.wrapping_add(k as u64), exec: cfg.exec, ..cfg.power.clone() };
        let (next, pair) = update_x2(&x1, &power)?;
        x2 = next;
        u = pair.vector;
        lambda = pair.value;
        rho *= cfg.rho1;
        let gap = x1.sub(&x2)?.norm_fr();
        gap_trace.push((k, gap));
        if gap <= cfg.beta {
            converged = true;
            break;
        }
    }

    if lambda.st <= 0.0 {
        return Err(Error::NonPositiveLambda(lambda.st));
    }
    let x = u.scale(lambda.sqrt()?);
    let result = SlamResult { x1, x2, lambda, u, x, iters: gap_trace.len(), gap_trace, converged };
    if converged {
        Ok(result)
    } else {
        Err(Error::SlamNoConvergence(Box::new(result)))
    }
}

/// `(e_x, e_Q)` against ground-truth poses.
///
/// `e_Q = ‖Q0 − λ·u·u*‖_FR / ‖Q0‖_FR` with `Q0` the noiseless measurement
/// matrix, and `e_x` is the relative `2^R` error between the recovered
/// factor and `conj(poses)` after both are right-aligned on the entry where
/// the truth has the largest `2^R` magnitude.
pub fn slam_errors(poses: &DQVector, result: &SlamResult, align: GaugeAlignment) -> Result<(f64, f64)> {
    if poses.len() != result.x.len() {
        return Err(Error::dims(poses.len(), result.x.len()));
    }
    let q0 = pose_matrix(poses);
    let e_q = q0.sub(&DQMatrix::rank_one(result.lambda, &result.u))?.norm_fr() / q0.norm_fr();

    let truth = poses.conj_entries();
    let mut idx = 0;
    for (i, e) in truth.iter().enumerate() {
        if e.norm_2r() > truth[idx].norm_2r() {
            idx = i;
        }
    }
    let xr = align_to(&truth, idx, align)?;
    let yr = align_to(&result.x, idx, align)?;
    let e_x = (&yr - &xr).norm_2r() / xr.norm_2r();
    Ok((e_x, e_q))
}

fn align_to(x: &DQVector, idx: usize, align: GaugeAlignment) -> Result<DQVector> {
    let a = x[idx];
    let g = match align {
        GaugeAlignment::Conjugate => a.conj(),
        GaugeAlignment::Literal => a,
    };
    let g = g.checked_div_dual(a.magnitude())?;
    Ok(x.mul_right(g))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlamMetrics {
    pub e_x: f64,
    #[serde(rename = "e_Q")]
    pub e_q: f64,
    pub iters: f64,
    pub time_s: f64,
}

pub fn write_gap_trace_to(w: impl Write, trace: &[(usize, f64)]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["iter", "gap_FR"])?;
    for (k, g) in trace {
        out.write_record([k.to_string(), format!("{g:?}")])?;
    }
    out.flush().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(())
}

pub fn write_gap_trace(path: &Path, trace: &[(usize, f64)]) -> Result<()> {
    write_gap_trace_to(io::create(path)?, trace)
}
