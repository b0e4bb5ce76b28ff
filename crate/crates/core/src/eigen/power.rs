use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{EigenPair, PowerConfig, TracePoint};
use crate::error::{Error, Result};
use crate::linalg::{DQMatrix, DQVector};
use crate::projection::{project_unit_vec, random_unit_vec};
use crate::scalar::DualNumber;

/// Dominant eigenpair of a Hermitian matrix by power iteration.
///
/// Each step computes `y = Q·v` and `λ = v*·y`, stops once
/// `‖y − v·λ‖_2R ≤ δ·‖Q‖_FR`, and otherwise replaces `v` by the unit-norm
/// projection of `y`. Running out of iterations yields
/// [`Error::NoConvergence`] carrying the lowest-residual pair seen.
pub fn power_method(q: &DQMatrix, cfg: &PowerConfig) -> Result<EigenPair> {
    power_method_observed(q, cfg, |_, _, _| {})
}

/// [`power_method`] that also reports every iterate `(k, λ^(k), v^(k))`.
pub fn power_method_observed(
    q: &DQMatrix,
    cfg: &PowerConfig,
    mut observe: impl FnMut(usize, DualNumber, &DQVector),
) -> Result<EigenPair> {
    cfg.validate()?;
    q.check_hermitian()?;
    if !q.is_appreciable() {
        return Err(Error::ZeroStandardPart);
    }
    let n = q.rows();
    let mut v = match &cfg.init {
        Some(init) if init.len() != n => return Err(Error::dims(n, init.len())),
        Some(init) => project_unit_vec(init)?,
        None => random_unit_vec(&mut ChaCha8Rng::seed_from_u64(cfg.seed), n),
    };
    let threshold = cfg.tol * q.norm_fr();
    let mut trace = Vec::new();
    let mut best: Option<(f64, DualNumber, DQVector)> = None;

    for k in 0..=cfg.max_iters {
        let y = q.mat_vec_with(&v, cfg.exec)?;
        let lambda = v.inner(&y)?.scalar_part();
        let residual = (&y - &v.scale(lambda)).norm_2r();
        observe(k, lambda, &v);
        if cfg.record_trace {
            trace.push(TracePoint { iter: k, residual, value: lambda });
        }
        if residual <= threshold {
            return Ok(EigenPair { value: lambda, vector: v, iters: k, residual, trace });
        }
        if best.as_ref().is_none_or(|b| residual < b.0) {
            best = Some((residual, lambda, v.clone()));
        }
        if k < cfg.max_iters {
            v = project_unit_vec(&y)?;
        }
    }
    let (residual, value, vector) = best.expect("at least one iteration ran");
    Err(Error::NoConvergence(Box::new(EigenPair {
        value,
        vector,
        iters: cfg.max_iters,
        residual,
        trace,
    })))
}

/// Best rank-one approximation `λ·u·u*` of a Hermitian matrix in the F-norm,
/// given by its dominant eigenpair.
pub fn best_rank_one(q: &DQMatrix, cfg: &PowerConfig) -> Result<EigenPair> {
    power_method(q, cfg)
}
