use super::{power_method, EigenPair, PowerConfig, SpectrumResult};
use crate::error::{Error, Result};
use crate::linalg::{DQMatrix, APPRECIABLE_TOL};
use crate::scalar::DualNumber;

#[derive(Debug, Clone, Default)]
pub struct DeflationOptions {
    /// Absolute stopping threshold on `‖Q_st‖_F`; defaults to `1e-6·‖Q_st‖_F`.
    pub gamma: Option<f64>,
    /// Keep the best pair of a step that ran out of iterations instead of failing.
    pub accept_unconverged: bool,
}

impl DeflationOptions {
    pub const RELATIVE_GAMMA: f64 = 1e-6;

    pub fn gamma_for(&self, q: &DQMatrix) -> f64 {
        self.gamma.unwrap_or(Self::RELATIVE_GAMMA * q.st_norm_f())
    }
}

/// All appreciable eigenpairs by repeated power iteration and deflation
/// `Q ← Q − λ·u·u*`, stopping once `‖Q_st‖_F ≤ γ` or `n` pairs are found.
///
/// Step `k` seeds its starting vector with `cfg.seed + k`. Pairs are returned
/// in descending order, ties keeping discovery order.
pub fn all_eigenpairs(q: &DQMatrix, cfg: &PowerConfig, opts: &DeflationOptions) -> Result<SpectrumResult> {
    cfg.validate()?;
    q.check_hermitian()?;
    let n = q.rows();
    let gamma = opts.gamma_for(q);
    let mut qk = q.clone();
    let mut pairs: Vec<EigenPair> = Vec::new();

    while pairs.len() < n {
        let st = qk.st_norm_f();
        if st <= gamma || st <= APPRECIABLE_TOL {
            break;
        }
        let step = PowerConfig { seed: cfg.seed.wrapping_add(pairs.len() as u64), ..cfg.clone() };
        let pair = match power_method(&qk, &step) {
            Ok(p) => p,
            Err(Error::NoConvergence(p)) if opts.accept_unconverged => *p,
            Err(e) => {
                let index = pairs.len();
                let partial = finish(pairs, st, n);
                return Err(Error::Deflation { index, partial: Box::new(partial), source: Box::new(e) });
            }
        };
        qk.sub_rank_one_assign(pair.value, &pair.vector)?;
        pairs.push(pair);
    }
    Ok(finish(pairs, qk.st_norm_f(), n))
}

fn finish(mut pairs: Vec<EigenPair>, deflation_residual: f64, dim: usize) -> SpectrumResult {
    pairs.sort_by(|a, b| b.value.total_cmp(&a.value));
    SpectrumResult { pairs, deflation_residual, dim }
}

/// Singular values of any matrix `A`, as square roots of the eigenvalues of
/// `A*·A` whose standard part exceeds the deflation threshold.
pub fn singular_values(a: &DQMatrix, cfg: &PowerConfig, opts: &DeflationOptions) -> Result<Vec<DualNumber>> {
    let b = a.conj_transpose().mat_mul(a)?.hermitian_part()?;
    if !b.is_appreciable() {
        return Ok(Vec::new());
    }
    let gamma = opts.gamma_for(&b);
    let spectrum = all_eigenpairs(&b, cfg, opts)?;
    spectrum
        .pairs
        .iter()
        .filter(|p| p.value.st > gamma)
        .map(|p| p.value.sqrt())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_spectrum_sorted() {
        let q = DQMatrix::from_diagonal(&[
            DualNumber::new(1.0, 0.5),
            DualNumber::new(-4.0, 1.0),
            DualNumber::new(2.0, -1.0),
        ]);
        let s = all_eigenpairs(&q, &PowerConfig::default(), &DeflationOptions::default()).unwrap();
        let v = s.values();
        assert_eq!(v.len(), 3);
        assert!(v[0].approx_eq(&DualNumber::new(2.0, -1.0), 1e-7));
        assert!(v[1].approx_eq(&DualNumber::new(1.0, 0.5), 1e-7));
        assert!(v[2].approx_eq(&DualNumber::new(-4.0, 1.0), 1e-7));
        assert!(s.deflation_residual <= 1e-6 * q.st_norm_f());
    }

    #[test]
    fn zero_matrix_has_empty_spectrum() {
        let s = all_eigenpairs(&DQMatrix::zeros(3, 3), &PowerConfig::default(), &DeflationOptions::default()).unwrap();
        assert!(s.pairs.is_empty());
        assert_eq!(s.padded_values(), vec![DualNumber::ZERO; 3]);
    }

    #[test]
    fn singular_values_of_diagonal() {
        let a = DQMatrix::from_diagonal(&[DualNumber::real(3.0)]);
        let s = singular_values(&a, &PowerConfig::default(), &DeflationOptions::default()).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].approx_eq(&DualNumber::real(3.0), 1e-10));

        // A*A = diag(4 + 4ε, 1)
        let a = DQMatrix::from_diagonal(&[DualNumber::new(2.0, 1.0), DualNumber::ONE]);
        let s = singular_values(&a, &PowerConfig::default(), &DeflationOptions::default()).unwrap();
        assert!(s[0].approx_eq(&DualNumber::new(2.0, 1.0), 1e-8));
        assert!(s[1].approx_eq(&DualNumber::ONE, 1e-8));
    }
}
