mod common;

use common::*;
use dqpower::experiment::{random_graph_instance, slam_reps, SlamSetup};
use dqpower::{all_eigenpairs, DeflationOptions, Execution, GaugeAlignment, PowerConfig, SlamConfig};

#[test]
fn mat_vec_is_identical_across_modes() {
    let mut g = rng(1);
    let q = random_hermitian(&mut g, 100);
    let x = random_dq_vec(&mut g, 100);
    let a = q.mat_vec_with(&x, Execution::Sequential).unwrap();
    let b = q.mat_vec_with(&x, Execution::Parallel).unwrap();
    assert_eq!(a.as_slice(), b.as_slice());
}

#[test]
fn spectra_are_identical_across_modes() {
    let inst = random_graph_instance(80, 0.1, 2).unwrap();
    let opts = DeflationOptions { accept_unconverged: true, ..DeflationOptions::default() };
    let run = |exec| {
        let cfg = PowerConfig { max_iters: 40, exec, ..PowerConfig::default() };
        all_eigenpairs(&inst.bundle.l, &cfg, &opts).unwrap()
    };
    let (a, b) = (run(Execution::Sequential), run(Execution::Parallel));
    assert_eq!(a.values(), b.values());
    assert_eq!(a.reconstruct().as_slice(), b.reconstruct().as_slice());
}

#[test]
fn slam_repetitions_are_identical_across_modes() {
    let setup = SlamSetup::RandomGraph { n: 10, sparsity: 0.4 };
    let run = |exec| {
        slam_reps(&setup, 0.05, 6, 3, &SlamConfig::default(), GaugeAlignment::Conjugate, exec)
            .into_iter()
            .map(|t| t.unwrap())
            .map(|t| (t.seed, t.e_x.to_bits(), t.e_q.to_bits(), t.iters))
            .collect::<Vec<_>>()
    };
    let a = run(Execution::Sequential);
    assert_eq!(a, run(Execution::Parallel));
    assert_eq!(a.iter().map(|t| t.0).collect::<Vec<_>>(), vec![3, 4, 5, 6, 7, 8]);
}
