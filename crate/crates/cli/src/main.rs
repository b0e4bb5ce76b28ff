use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dqpower::eigen::write_trace;
use dqpower::experiment::{circle_instance, random_graph_instance, slam_reps, summarize, LaplacianInstance, SlamSetup, SlamTrial};
use dqpower::graph::write_edges;
use dqpower::linalg::io::{read_matrix, write_matrix, write_vector};
use dqpower::slam::{read_problem, write_gap_trace, SlamMetrics};
use dqpower::{
    all_eigenpairs, power_method, solve, spectrum_errors, DeflationOptions, DualNumber, EigenPair, Error, Execution,
    GaugeAlignment, PowerConfig, SlamConfig, SpectrumResult, X1Update,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "dqpower", version, about = "Dual quaternion eigensolvers and pose-graph SLAM")]
struct Cli {
    /// Row and repetition scheduling.
    #[arg(long, value_enum, global = true, default_value = "auto")]
    exec: ExecArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dominant eigenpair of a Hermitian matrix file.
    Eig(EigArgs),
    /// All appreciable eigenpairs by deflation.
    EigsAll(EigsAllArgs),
    /// Laplacian of an n-cycle with random unit poses.
    Circle(CircleArgs),
    /// Laplacian of a random graph with random unit poses.
    Randgraph(RandgraphArgs),
    /// Pose-graph SLAM by rank-one completion.
    Slam(SlamArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ExecArg {
    Sequential,
    Parallel,
    Auto,
}

impl From<ExecArg> for Execution {
    fn from(e: ExecArg) -> Self {
        match e {
            ExecArg::Sequential => Execution::Sequential,
            ExecArg::Parallel => Execution::Parallel,
            ExecArg::Auto => Execution::Auto,
        }
    }
}

#[derive(Args)]
struct PowerArgs {
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 5000)]
    max_iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl PowerArgs {
    fn config(&self, exec: Execution) -> PowerConfig {
        PowerConfig { max_iters: self.max_iters, tol: self.tol, seed: self.seed, exec, ..PowerConfig::default() }
    }
}

#[derive(Args)]
struct EigArgs {
    matrix: PathBuf,
    #[command(flatten)]
    power: PowerArgs,
    /// Write the per-iteration residual trace as CSV.
    #[arg(long)]
    trace_out: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct EigsAllArgs {
    matrix: PathBuf,
    #[command(flatten)]
    power: PowerArgs,
    /// Absolute deflation threshold on ‖Q_st‖_F; defaults to 1e-6·‖Q_st‖_F.
    #[arg(long)]
    gamma: Option<f64>,
    /// Keep eigenpairs whose power method ran out of iterations.
    #[arg(long)]
    allow_partial: bool,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct CircleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct RandgraphArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    sparsity: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct SlamSource {
    /// Problem JSON with arcs, measurements and optional ground-truth poses.
    #[arg(long, group = "source")]
    problem: Option<PathBuf>,
    /// n-cycle with random poses.
    #[arg(long, group = "source", value_name = "N")]
    circle: Option<usize>,
    /// Random directed arcs with observation ratio S.
    #[arg(long, group = "source", num_args = 2, value_names = ["N", "S"])]
    randgraph: Option<Vec<String>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum X1Arg {
    Symmetrized,
    Literal,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlignArg {
    Conjugate,
    Literal,
}

#[derive(Args)]
struct SlamArgs {
    #[command(flatten)]
    source: SlamSource,
    /// Relative noise level on the observed measurements.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-5)]
    beta: f64,
    #[arg(long, default_value_t = 0.01)]
    rho0: f64,
    #[arg(long, default_value_t = 1.1)]
    rho1: f64,
    #[arg(long, value_enum, default_value = "symmetrized")]
    x1_update: X1Arg,
    #[arg(long, value_enum, default_value = "conjugate")]
    alignment: AlignArg,
    /// Exit 0 even when some repetition hit the iteration limit.
    #[arg(long)]
    allow_partial: bool,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Display) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotHermitian(_)
            | Error::NotUnitPose { .. }
            | Error::ZeroStandardPart
            | Error::ZeroInput
            | Error::DivisionUndefined
            | Error::SqrtUndefined(_)
            | Error::NotScalar(_)
            | Error::SingularSystem { .. }
            | Error::NonPositiveLambda(_) => 3,
            e if e.is_convergence() => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = Execution::from(cli.exec);
    let result = match &cli.command {
        Command::Eig(a) => eig(a, exec),
        Command::EigsAll(a) => eigs_all(a, exec),
        Command::Circle(a) => generate(circle_instance(a.n, a.seed), &a.out_dir),
        Command::Randgraph(a) => generate(random_graph_instance(a.n, a.sparsity, a.seed), &a.out_dir),
        Command::Slam(a) => slam(a, exec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Fixed 10-decimal rendering with trailing zeros removed.
fn trimmed(x: f64) -> String {
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn dual(d: DualNumber) -> String {
    let du = trimmed(d.du);
    match du.strip_prefix('-') {
        Some(abs) => format!("{} - {abs}ε", trimmed(d.st)),
        None => format!("{} + {du}ε", trimmed(d.st)),
    }
}

fn ensure_dir(dir: &Path) -> CmdResult {
    fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CmdResult {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::input(e.to_string()))?;
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct PairJson {
    lambda: [f64; 2],
    iterations: usize,
    residual_2r: f64,
    converged: bool,
    vector: Vec<[f64; 8]>,
}

impl PairJson {
    fn new(p: &EigenPair, converged: bool) -> Self {
        PairJson {
            lambda: p.value.to_array(),
            iterations: p.iters,
            residual_2r: p.residual,
            converged,
            vector: p.vector.iter().map(|e| e.to_array()).collect(),
        }
    }
}

fn eig(a: &EigArgs, exec: Execution) -> CmdResult {
    let q = read_matrix(&a.matrix)?;
    let (pair, failure) = match power_method(&q, &a.power.config(exec)) {
        Ok(p) => (p, None),
        Err(Error::NoConvergence(p)) => {
            let f = Failure::from(Error::NoConvergence(p.clone()));
            (*p, Some(f))
        }
        Err(e) => return Err(e.into()),
    };
    println!("lambda = {}", dual(pair.value));
    println!("iterations = {}", pair.iters);
    println!("residual = {:e}", pair.residual);
    if failure.is_some() {
        println!("converged = false");
    }
    if let Some(path) = &a.trace_out {
        write_trace(path, &pair.trace)?;
    }
    if let Some(dir) = &a.out_dir {
        ensure_dir(dir)?;
        write_json(&dir.join("eig.json"), &PairJson::new(&pair, failure.is_none()))?;
    }
    failure.map_or(Ok(()), Err)
}

#[derive(Serialize)]
struct SpectrumJson {
    values: Vec<[f64; 2]>,
    iterations: Vec<usize>,
    e_lambda: f64,
    e_l: f64,
    deflation_residual: f64,
    pairs: Vec<PairJson>,
}

fn eigs_all(a: &EigsAllArgs, exec: Execution) -> CmdResult {
    let q = read_matrix(&a.matrix)?;
    let opts = DeflationOptions { gamma: a.gamma, accept_unconverged: a.allow_partial };
    let (spectrum, failure): (SpectrumResult, Option<Failure>) = match all_eigenpairs(&q, &a.power.config(exec), &opts) {
        Ok(s) => (s, None),
        Err(Error::Deflation { index, partial, source }) => {
            let f = Failure::from(Error::Deflation { index, partial: partial.clone(), source });
            (*partial, Some(f))
        }
        Err(e) => return Err(e.into()),
    };
    let (e_lambda, e_l) = spectrum_errors(&q, &spectrum)?;
    let values = spectrum.padded_values();
    let mut iterations = spectrum.iterations();
    iterations.resize(values.len(), 0);

    let row = |items: Vec<String>| format!("[{}]", items.join(", "));
    println!("lambda     = {}", row(values.iter().map(|v| format!("{:.4}", v.st)).collect()));
    println!("dual part  = {}", row(values.iter().map(|v| format!("{:.1e}", v.du)).collect()));
    println!("iterations = {}", row(iterations.iter().map(|k| k.to_string()).collect()));
    println!("e_lambda = {e_lambda:e}");
    println!("e_L = {e_l:e}");
    if failure.is_some() {
        println!("complete = false");
    }
    if let Some(dir) = &a.out_dir {
        ensure_dir(dir)?;
        let json = SpectrumJson {
            values: values.iter().map(|v| v.to_array()).collect(),
            iterations,
            e_lambda,
            e_l,
            deflation_residual: spectrum.deflation_residual,
            pairs: spectrum.pairs.iter().map(|p| PairJson::new(p, true)).collect(),
        };
        write_json(&dir.join("spectrum.json"), &json)?;
    }
    failure.map_or(Ok(()), Err)
}

fn generate(inst: dqpower::Result<LaplacianInstance>, dir: &Path) -> CmdResult {
    let inst = inst?;
    ensure_dir(dir)?;
    let (l, poses, edges) = (dir.join("laplacian.json"), dir.join("poses.csv"), dir.join("edges.csv"));
    write_matrix(&l, &inst.bundle.l)?;
    write_vector(&poses, &inst.poses)?;
    write_edges(&edges, inst.graph.edges())?;
    println!("laplacian = {}", l.display());
    println!("poses = {}", poses.display());
    println!("edges = {}", edges.display());
    Ok(())
}

#[derive(Serialize)]
struct SlamReport {
    mean: Option<SlamMetrics>,
    converged: usize,
    reps: Vec<RepJson>,
}

#[derive(Serialize)]
struct RepJson {
    seed: u64,
    noise_level: f64,
    e_x: Option<f64>,
    #[serde(rename = "e_Q")]
    e_q: Option<f64>,
    iters: usize,
    time_s: f64,
    converged: bool,
    lambda: [f64; 2],
}

fn slam(a: &SlamArgs, exec: Execution) -> CmdResult {
    let cfg = SlamConfig {
        rho0: a.rho0,
        rho1: a.rho1,
        max_iters: a.max_iters,
        beta: a.beta,
        x1_update: match a.x1_update {
            X1Arg::Symmetrized => X1Update::Symmetrized,
            X1Arg::Literal => X1Update::Literal,
        },
        exec,
        ..SlamConfig::default()
    };
    let align = match a.alignment {
        AlignArg::Conjugate => GaugeAlignment::Conjugate,
        AlignArg::Literal => GaugeAlignment::Literal,
    };
    if a.reps == 0 {
        return Err(Failure::input("--reps must be at least 1"));
    }

    let setup = if let Some(path) = &a.source.problem {
        match read_problem(path)? {
            (graph, Some(poses)) => SlamSetup::Fixed { graph, poses },
            (graph, None) => return slam_without_truth(a, &graph, &cfg),
        }
    } else if let Some(n) = a.source.circle {
        SlamSetup::Circle(n)
    } else {
        let v = a.source.randgraph.as_deref().unwrap_or_default();
        let n = v[0].parse().map_err(|e| Failure::input(format!("--randgraph N: {e}")))?;
        let sparsity = v[1].parse().map_err(|e| Failure::input(format!("--randgraph S: {e}")))?;
        SlamSetup::RandomGraph { n, sparsity }
    };

    let trials = slam_reps(&setup, a.noise, a.reps, a.seed, &cfg, align, exec)
        .into_iter()
        .collect::<dqpower::Result<Vec<SlamTrial>>>()?;
    let s = summarize(&trials);
    println!("reps = {}", s.reps);
    println!("e_x = {:e}", s.e_x);
    println!("e_Q = {:e}", s.e_q);
    println!("iterations = {}", s.iters);
    println!("time_s = {:.4}", s.time_s);
    println!("converged = {}/{}", s.converged, s.reps);

    if let Some(dir) = &a.out_dir {
        ensure_dir(dir)?;
        let reps = trials
            .iter()
            .map(|t| RepJson {
                seed: t.seed,
                noise_level: t.noise_level,
                e_x: Some(t.e_x),
                e_q: Some(t.e_q),
                iters: t.iters,
                time_s: t.time_s,
                converged: t.converged,
                lambda: t.result.lambda.to_array(),
            })
            .collect();
        let mean = SlamMetrics { e_x: s.e_x, e_q: s.e_q, iters: s.iters, time_s: s.time_s };
        write_json(&dir.join("metrics.json"), &SlamReport { mean: Some(mean), converged: s.converged, reps })?;
        for (r, t) in trials.iter().enumerate() {
            write_vector(&dir.join(format!("poses_{r}.csv")), &t.result.poses())?;
            write_gap_trace(&dir.join(format!("gap_trace_{r}.csv")), &t.result.gap_trace)?;
        }
    }
    convergence_check(s.converged, s.reps, a.allow_partial)
}

/// Problems without ground truth: solve, report, and write poses and traces.
fn slam_without_truth(a: &SlamArgs, graph: &dqpower::PoseGraph, cfg: &SlamConfig) -> CmdResult {
    if a.noise > 0.0 {
        return Err(Failure::input("--noise needs a problem file with ground-truth poses"));
    }
    let mut reps = Vec::new();
    let mut results = Vec::new();
    for r in 0..a.reps {
        let seed = a.seed.wrapping_add(r as u64);
        let start = Instant::now();
        let result = match solve(graph, &SlamConfig { seed, ..cfg.clone() }) {
            Ok(res) => res,
            Err(Error::SlamNoConvergence(res)) => *res,
            Err(e) => return Err(e.into()),
        };
        let time_s = start.elapsed().as_secs_f64();
        println!("rep {r}: iterations = {}, gap = {:e}, lambda = {}", result.iters, result.final_gap(), dual(result.lambda));
        reps.push(RepJson {
            seed,
            noise_level: 0.0,
            e_x: None,
            e_q: None,
            iters: result.iters,
            time_s,
            converged: result.converged,
            lambda: result.lambda.to_array(),
        });
        results.push(result);
    }
    let converged = results.iter().filter(|r| r.converged).count();
    if let Some(dir) = &a.out_dir {
        ensure_dir(dir)?;
        for (r, res) in results.iter().enumerate() {
            write_vector(&dir.join(format!("poses_{r}.csv")), &res.poses())?;
            write_gap_trace(&dir.join(format!("gap_trace_{r}.csv")), &res.gap_trace)?;
        }
        write_json(&dir.join("metrics.json"), &SlamReport { mean: None, converged, reps })?;
    }
    convergence_check(converged, results.len(), a.allow_partial)
}

fn convergence_check(converged: usize, reps: usize, allow_partial: bool) -> CmdResult {
    if converged < reps && !allow_partial {
        return Err(Failure { code: 4, message: format!("{} of {reps} repetitions did not converge", reps - converged) });
    }
    Ok(())
}
