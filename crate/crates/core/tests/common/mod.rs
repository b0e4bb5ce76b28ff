#![allow(dead_code)]

use dqpower::linalg::DQMatrix;
use dqpower::projection::{project_unit_dq, project_unit_vec, random_unit_dq, random_unit_vec};
use dqpower::{DQVector, DualNumber, DualQuaternion, Quaternion};
use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type LawResult = Result<(), TestCaseError>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal_dq(rng: &mut ChaCha8Rng) -> DualQuaternion {
    let mut a = [0.0; 8];
    for c in &mut a {
        *c = rng.sample(StandardNormal);
    }
    DualQuaternion::from_array(a).unwrap()
}

pub fn random_dq_vec(rng: &mut ChaCha8Rng, n: usize) -> DQVector {
    DQVector::from_fn(n, |_| normal_dq(rng))
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> DQMatrix {
    let a = DQMatrix::from_fn(n, n, |_, _| normal_dq(rng));
    a.hermitian_part().unwrap()
}

/// Real `4n×4n` matrix of `v ↦ Q·v` for a quaternion matrix.
pub fn real_embedding(q: &[Quaternion], n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(4 * n, 4 * n);
    for i in 0..n {
        for j in 0..n {
            for (k, e) in [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K].into_iter().enumerate() {
                for (r, v) in (q[i * n + j] * e).to_array().iter().enumerate() {
                    m[(4 * i + r, 4 * j + k)] = *v;
                }
            }
        }
    }
    m
}

pub fn st_parts(q: &DQMatrix) -> Vec<Quaternion> {
    q.as_slice().iter().map(|e| e.st).collect()
}

pub fn du_parts(q: &DQMatrix) -> Vec<Quaternion> {
    q.as_slice().iter().map(|e| e.du).collect()
}

/// Spectral norm of a square quaternion matrix through its real embedding.
pub fn spectral_norm(q: &[Quaternion], n: usize) -> f64 {
    real_embedding(q, n).singular_values().max()
}

/// `|a − b|²` as a dual number.
pub fn dist_sq(a: DualQuaternion, b: DualQuaternion) -> DualNumber {
    (a - b).magnitude_sq()
}

pub fn vec_dist_sq(a: &DQVector, b: &DQVector) -> DualNumber {
    (a - b).norm2_sq()
}

/// Whether `candidate` is strictly smaller than `best` in the total order,
/// beyond rounding: by more than `st_tol` in the standard part, or by more
/// than `du_tol` in the dual part when the standard parts agree.
pub fn beats(candidate: DualNumber, best: DualNumber, st_tol: f64, du_tol: f64) -> bool {
    if candidate.st < best.st - st_tol {
        return true;
    }
    (candidate.st - best.st).abs() <= st_tol && candidate.du < best.du - du_tol
}

pub fn scale_of(q: DualQuaternion) -> f64 {
    q.to_array().iter().fold(1.0f64, |m, c| m.max(c.abs()))
}

// ---------------------------------------------------------------- strategies

pub fn coord() -> impl Strategy<Value = f64> {
    -5.0f64..5.0
}

pub fn dual_number() -> impl Strategy<Value = DualNumber> {
    (coord(), coord()).prop_map(|(a, b)| DualNumber::new(a, b))
}

pub fn divisor() -> impl Strategy<Value = DualNumber> {
    (prop_oneof![-5.0f64..-0.1, 0.1f64..5.0], coord()).prop_map(|(a, b)| DualNumber::new(a, b))
}

pub fn quaternion() -> impl Strategy<Value = Quaternion> {
    (coord(), coord(), coord(), coord()).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

pub fn dual_quaternion() -> impl Strategy<Value = DualQuaternion> {
    (quaternion(), quaternion()).prop_map(|(a, b)| DualQuaternion::new(a, b))
}

pub fn appreciable_dq() -> impl Strategy<Value = DualQuaternion> {
    dual_quaternion().prop_filter("appreciable", |q| q.st.norm() > 1e-3)
}

pub fn unit_dq() -> impl Strategy<Value = DualQuaternion> {
    any::<u64>().prop_map(|s| random_unit_dq(&mut rng(s)))
}

pub fn seed_and_dim(max_n: usize) -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1..=max_n)
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(cases: u32, strategy: S, law: impl Fn(S::Value) -> LawResult) -> Result<(), String> {
    runner(cases).run(&strategy, law).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- scalar laws

pub fn law_division_round_trip(cases: u32) -> Result<(), String> {
    check(cases, (dual_number(), divisor()), |(b, a)| {
        let back = b.checked_div(a).unwrap() * a;
        let scale = b.st.abs().max(b.du.abs()).max(1.0) * (1.0 + a.du.abs() / a.st.abs());
        prop_assert!(back.approx_eq(&b, 1e-12 * scale), "{back} vs {b}");
        Ok(())
    })
}

pub fn law_self_product_is_magnitude_squared(cases: u32) -> Result<(), String> {
    check(cases, appreciable_dq(), |q| {
        let p = q * q.conj();
        let s = scale_of(q).powi(2);
        prop_assert!(p.vector_part_norm() <= 1e-12 * s);
        let m = q.magnitude();
        prop_assert!(p.scalar_part().approx_eq(&(m * m), 1e-10 * s));
        Ok(())
    })
}

pub fn law_conjugate_reverses_products(cases: u32) -> Result<(), String> {
    check(cases, (dual_quaternion(), dual_quaternion()), |(p, q)| {
        let l = (p * q).conj();
        let r = q.conj() * p.conj();
        prop_assert!(l.approx_eq(&r, 1e-12 * scale_of(p) * scale_of(q)));
        Ok(())
    })
}

pub fn law_unit_products_stay_unit(cases: u32) -> Result<(), String> {
    check(cases, (unit_dq(), unit_dq()), |(p, q)| {
        prop_assert!((p * q).is_unit_within(1e-10));
        Ok(())
    })
}

pub fn law_total_order(cases: u32) -> Result<(), String> {
    // coarse values make ties in either part common
    let coarse = (-2i32..=2, -2i32..=2).prop_map(|(a, b)| DualNumber::new(a as f64, b as f64));
    check(cases, (coarse.clone(), coarse.clone(), coarse), |(a, b, c)| {
        use std::cmp::Ordering::*;
        prop_assert_eq!(a.total_cmp(&b), b.total_cmp(&a).reverse());
        if a.total_cmp(&b) != Greater && b.total_cmp(&c) != Greater {
            prop_assert!(a.total_cmp(&c) != Greater);
        }
        if a.total_cmp(&b) == Equal {
            prop_assert_eq!(a, b);
        }
        Ok(())
    })
}

pub fn law_quaternion_ring(cases: u32) -> Result<(), String> {
    if Quaternion::I * Quaternion::J == Quaternion::J * Quaternion::I {
        return Err("i·j = j·i".into());
    }
    check(cases, (quaternion(), quaternion(), quaternion()), |(p, q, r)| {
        let s = p.norm().max(1.0) * q.norm().max(1.0) * r.norm().max(1.0);
        prop_assert!(((p * q) * r).approx_eq(&(p * (q * r)), 1e-12 * s));
        prop_assert!((p * (q + r)).approx_eq(&(p * q + p * r), 1e-12 * s));
        prop_assert!(((q + r) * p).approx_eq(&(q * p + r * p), 1e-12 * s));
        Ok(())
    })
}

// ---------------------------------------------------------------- linalg laws

pub fn law_hermitian_norm_f(cases: u32) -> Result<(), String> {
    check(cases, seed_and_dim(5), |(seed, n)| {
        let q = random_hermitian(&mut rng(seed), n);
        let st = q.st_norm_f();
        let mut tr = Quaternion::ZERO;
        for i in 0..n {
            for k in 0..n {
                tr += q.get(i, k).st * q.get(k, i).du;
            }
        }
        let du = q.norm_f().du;
        prop_assert!((du - tr.sc() / st).abs() <= 1e-10 * q.max_abs().max(1.0));
        Ok(())
    })
}

pub fn law_mat_vec_bound(cases: u32) -> Result<(), String> {
    check(cases, seed_and_dim(5), |(seed, n)| {
        let mut g = rng(seed);
        let q = DQMatrix::from_fn(n, n, |_, _| normal_dq(&mut g));
        let x = random_dq_vec(&mut g, n);
        let bound = (spectral_norm(&st_parts(&q), n) + spectral_norm(&du_parts(&q), n)) * x.norm_2r();
        let lhs = q.mat_vec(&x).unwrap().norm_2r();
        prop_assert!(lhs <= bound * (1.0 + 1e-12), "{lhs} > {bound}");
        Ok(())
    })
}

pub fn law_inner_conjugate_symmetry(cases: u32) -> Result<(), String> {
    check(cases, seed_and_dim(6), |(seed, n)| {
        let mut g = rng(seed);
        let x = random_dq_vec(&mut g, n);
        let y = random_dq_vec(&mut g, n);
        let a = x.inner(&y).unwrap();
        let b = y.inner(&x).unwrap().conj();
        prop_assert!(a.approx_eq(&b, 1e-12 * (x.norm_2r() * y.norm_2r()).max(1.0)));
        Ok(())
    })
}

pub fn law_rank_one_action(cases: u32) -> Result<(), String> {
    check(cases, (seed_and_dim(6), dual_number()), |((seed, n), lambda)| {
        let u = random_unit_vec(&mut rng(seed), n);
        let r = DQMatrix::rank_one(lambda, &u);
        let scale = lambda.st.abs().max(lambda.du.abs()).max(1.0);
        prop_assert!(r.hermitian_deviation() <= 1e-14 * scale);
        let got = r.mat_vec(&u).unwrap();
        prop_assert!(got.approx_eq(&u.scale(lambda), 1e-10 * scale));
        Ok(())
    })
}

pub fn law_quadratic_form_is_scalar(cases: u32) -> Result<(), String> {
    check(cases, seed_and_dim(6), |(seed, n)| {
        let mut g = rng(seed);
        let q = random_hermitian(&mut g, n);
        let x = random_dq_vec(&mut g, n);
        let v = x.inner(&q.mat_vec(&x).unwrap()).unwrap();
        prop_assert!(v.vector_part_norm() <= 1e-9 * v.scalar_part().st.abs().max(1.0));
        prop_assert!(q.quadratic_form(&x).is_ok());
        Ok(())
    })
}

// ---------------------------------------------------------------- projection laws

/// Feasible competitors of `u = P(q)`: tangent perturbations of `u`
/// re-projected, random unit dual quaternions, and points sharing `u_st`
/// with another feasible dual part.
pub fn feasible_samples(u: DualQuaternion, g: &mut ChaCha8Rng, count: usize) -> Vec<DualQuaternion> {
    (0..count)
        .map(|k| match k % 3 {
            0 => {
                let step = 10f64.powi(-(g.gen_range(1..8)));
                project_unit_dq(u + normal_dq(g) * step).unwrap()
            }
            1 => random_unit_dq(g),
            _ => {
                let w = normal_dq(g).st;
                let pure = Quaternion::new(0.0, w.x, w.y, w.z) * 10f64.powi(-(g.gen_range(0..6)));
                // u_st·ω with ω pure keeps sc(u_st*·du) = 0
                DualQuaternion::new(u.st, u.du + u.st * pure)
            }
        })
        .collect()
}

pub fn projection_never_beaten(q: DualQuaternion, g: &mut ChaCha8Rng, samples: usize) -> LawResult {
    let u = project_unit_dq(q).unwrap();
    let best = dist_sq(u, q);
    let s = scale_of(q).powi(2);
    for v in feasible_samples(u, g, samples) {
        prop_assert!(!beats(dist_sq(v, q), best, 1e-12 * s, 1e-10 * s), "beaten by {v}");
    }
    Ok(())
}

pub fn law_projection_optimal(cases: u32) -> Result<(), String> {
    check(cases, (appreciable_dq(), any::<u64>()), |(q, seed)| projection_never_beaten(q, &mut rng(seed), 30))
}

pub fn law_projection_dual_part(cases: u32) -> Result<(), String> {
    check(cases, (appreciable_dq(), any::<u64>()), |(q, seed)| {
        let u = project_unit_dq(q).unwrap();
        prop_assert!(u.du.dot(q.st).abs() <= 1e-10 * scale_of(q).powi(2));
        prop_assert!(u.is_unit_within(1e-10));
        // among dual parts w with sc(w*·q_st) = 0, u_I is closest to q_I/|q_st|
        let target = q.du / q.st.norm();
        let best = (u.du - target).norm_sq();
        let mut g = rng(seed);
        let ust = q.st / q.st.norm();
        for _ in 0..30 {
            let w = normal_dq(&mut g).st;
            let w = u.du + (w - ust * ust.dot(w)) * 10f64.powi(-(g.gen_range(0..8)));
            prop_assert!(w.dot(q.st).abs() <= 1e-9 * scale_of(q).powi(2));
            prop_assert!((w - target).norm_sq() >= best - 1e-12 * best.max(1.0));
        }
        Ok(())
    })
}

pub fn law_vector_projection(cases: u32) -> Result<(), String> {
    check(cases, seed_and_dim(6), |(seed, n)| {
        let mut g = rng(seed);
        let q = random_dq_vec(&mut g, n);
        let u = project_unit_vec(&q).unwrap();
        let constraint: f64 = u.iter().zip(q.iter()).map(|(a, b)| a.du.dot(b.st)).sum();
        prop_assert!(constraint.abs() <= 1e-9 * q.norm_2r().max(1.0));
        prop_assert!(u.norm2().approx_eq(&DualNumber::ONE, 1e-10));
        Ok(())
    })
}

pub fn law_projection_idempotent(cases: u32) -> Result<(), String> {
    check(cases, (dual_quaternion(), seed_and_dim(6)), |(q, (seed, n))| {
        if q != DualQuaternion::ZERO {
            let u = project_unit_dq(q).unwrap();
            prop_assert!(project_unit_dq(u).unwrap().approx_eq(&u, 1e-10));
        }
        let x = random_dq_vec(&mut rng(seed), n);
        let u = project_unit_vec(&x).unwrap();
        prop_assert!(project_unit_vec(&u).unwrap().approx_eq(&u, 1e-10));
        Ok(())
    })
}

pub struct Law {
    pub name: &'static str,
    pub run: fn(u32) -> Result<(), String>,
}

pub fn algebra_laws() -> Vec<Law> {
    macro_rules! laws {
        ($($f:ident),* $(,)?) => { vec![$(Law { name: stringify!($f), run: $f }),*] };
    }
    laws![
        law_division_round_trip,
        law_self_product_is_magnitude_squared,
        law_conjugate_reverses_products,
        law_unit_products_stay_unit,
        law_total_order,
        law_quaternion_ring,
        law_hermitian_norm_f,
        law_mat_vec_bound,
        law_inner_conjugate_symmetry,
        law_rank_one_action,
        law_quadratic_form_is_scalar,
        law_projection_optimal,
        law_projection_dual_part,
        law_vector_projection,
        law_projection_idempotent,
    ]
}
