//! Seeded experiment drivers shared by the CLI, tests and benches.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::eigen::{all_eigenpairs, DeflationOptions, PowerConfig, SpectrumResult};
use crate::error::{Error, Result};
use crate::graph::{circle_graph, laplacian, random_arcs, random_graph, spectrum_errors, Graph, LaplacianBundle};
use crate::linalg::DQVector;
use crate::par::{map_indices, Execution};
use crate::projection::random_unit_dq_vec;
use crate::slam::{add_noise, build_problem, slam_errors, solve, GaugeAlignment, PoseGraph, SlamConfig, SlamResult};

/// A graph with random unit poses and its Laplacian.
#[derive(Debug, Clone)]
pub struct LaplacianInstance {
    pub graph: Graph,
    pub poses: DQVector,
    pub bundle: LaplacianBundle,
}

pub fn circle_instance(n: usize, seed: u64) -> Result<LaplacianInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = circle_graph(n)?;
    let poses = random_unit_dq_vec(&mut rng, n);
    let bundle = laplacian(&graph, &poses)?;
    Ok(LaplacianInstance { graph, poses, bundle })
}

pub fn random_graph_instance(n: usize, sparsity: f64, seed: u64) -> Result<LaplacianInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = random_graph(n, sparsity, &mut rng)?;
    let poses = random_unit_dq_vec(&mut rng, n);
    let bundle = laplacian(&graph, &poses)?;
    Ok(LaplacianInstance { graph, poses, bundle })
}

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub spectrum: SpectrumResult,
    pub e_lambda: f64,
    pub e_l: f64,
    /// Wall-clock seconds per computed eigenvalue.
    pub time_per_eigenvalue: f64,
}

/// Full spectrum of a Laplacian together with its error metrics.
pub fn spectrum_report(inst: &LaplacianInstance, cfg: &PowerConfig, opts: &DeflationOptions) -> Result<SpectrumReport> {
    let start = Instant::now();
    let spectrum = all_eigenpairs(&inst.bundle.l, cfg, opts)?;
    let elapsed = start.elapsed().as_secs_f64();
    let (e_lambda, e_l) = spectrum_errors(&inst.bundle.l, &spectrum)?;
    let time_per_eigenvalue = elapsed / spectrum.pairs.len().max(1) as f64;
    Ok(SpectrumReport { spectrum, e_lambda, e_l, time_per_eigenvalue })
}

/// Where the poses and arcs of a SLAM trial come from.
#[derive(Debug, Clone)]
pub enum SlamSetup {
    Circle(usize),
    RandomGraph { n: usize, sparsity: f64 },
    /// A fixed problem with ground-truth poses; only the noise and the solver seed vary.
    Fixed { graph: PoseGraph, poses: DQVector },
}

#[derive(Debug, Clone)]
pub struct SlamTrial {
    pub seed: u64,
    pub noise_level: f64,
    pub e_x: f64,
    pub e_q: f64,
    pub iters: usize,
    pub time_s: f64,
    pub converged: bool,
    pub result: SlamResult,
    pub poses: DQVector,
}

/// One seeded trial: draw poses and arcs, add noise, solve, measure.
///
/// A run that exhausts its iteration budget is still reported, with
/// `converged = false`.
pub fn slam_trial(setup: &SlamSetup, noise: f64, seed: u64, cfg: &SlamConfig, align: GaugeAlignment) -> Result<SlamTrial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (clean, poses) = match setup {
        SlamSetup::Circle(n) => {
            let poses = random_unit_dq_vec(&mut rng, *n);
            (build_problem(&poses, &circle_graph(*n)?.arcs())?, poses)
        }
        SlamSetup::RandomGraph { n, sparsity } => {
            let arcs = random_arcs(*n, *sparsity, &mut rng)?;
            let poses = random_unit_dq_vec(&mut rng, *n);
            (build_problem(&poses, &arcs)?, poses)
        }
        SlamSetup::Fixed { graph, poses } => (graph.clone(), poses.clone()),
    };
    let (noisy, noise_level) = add_noise(&clean, noise, &mut rng)?;
    let cfg = SlamConfig { seed: seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1), ..cfg.clone() };

    let start = Instant::now();
    let result = match solve(&noisy, &cfg) {
        Ok(r) => r,
        Err(Error::SlamNoConvergence(r)) => *r,
        Err(e) => return Err(e),
    };
    let time_s = start.elapsed().as_secs_f64();
    let (e_x, e_q) = slam_errors(&poses, &result, align)?;
    Ok(SlamTrial {
        seed,
        noise_level,
        e_x,
        e_q,
        iters: result.iters,
        time_s,
        converged: result.converged,
        result,
        poses,
    })
}

/// Repetitions with seeds `seed, seed + 1, …`, possibly run concurrently.
/// Results keep repetition order.
pub fn slam_reps(
    setup: &SlamSetup,
    noise: f64,
    reps: usize,
    seed: u64,
    cfg: &SlamConfig,
    align: GaugeAlignment,
    exec: Execution,
) -> Vec<Result<SlamTrial>> {
    // the solver's own loops stay sequential when reps fan out
    let inner = SlamConfig {
        exec: if matches!(exec, Execution::Sequential) { Execution::Sequential } else { cfg.exec },
        ..cfg.clone()
    };
    map_indices(reps, exec, |r| slam_trial(setup, noise, seed.wrapping_add(r as u64), &inner, align))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlamSummary {
    pub e_x: f64,
    pub e_q: f64,
    pub iters: f64,
    pub time_s: f64,
    pub converged: usize,
    pub reps: usize,
}

pub fn summarize(trials: &[SlamTrial]) -> SlamSummary {
    let k = trials.len().max(1) as f64;
    let mean = |f: &dyn Fn(&SlamTrial) -> f64| trials.iter().map(f).sum::<f64>() / k;
    SlamSummary {
        e_x: mean(&|t| t.e_x),
        e_q: mean(&|t| t.e_q),
        iters: mean(&|t| t.iters as f64),
        time_s: mean(&|t| t.time_s),
        converged: trials.iter().filter(|t| t.converged).count(),
        reps: trials.len(),
    }
}
