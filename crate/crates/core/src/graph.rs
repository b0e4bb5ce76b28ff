//! Undirected graphs and their dual quaternion Laplacians.

use std::collections::HashSet;
use std::io::{Read, Write};
use std::path::Path;

use rand::Rng;

use crate::eigen::SpectrumResult;
use crate::error::{Error, Result};
use crate::linalg::{io, DQMatrix, DQVector};
use crate::scalar::{DualNumber, DualQuaternion};

/// Simple undirected graph on vertices `0..n`; edges are stored as `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (i, j) in edges {
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!("edge ({i}, {j}) out of range for {n} vertices")));
            }
            let e = (i.min(j), i.max(j));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            out.push(e);
        }
        Ok(Graph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(i, j) in &self.edges {
            d[i] += 1;
            d[j] += 1;
        }
        d
    }

    /// Both orientations of every edge.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().flat_map(|&(i, j)| [(i, j), (j, i)]).collect()
    }

    /// `m / n²` with `m` counting both orientations.
    pub fn sparsity(&self) -> f64 {
        2.0 * self.edges.len() as f64 / (self.n * self.n) as f64
    }
}

/// Cycle `0 – 1 – … – (n−1) – 0`.
pub fn circle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidGraph(format!("a circle needs at least 3 vertices, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Number of undirected edges a random graph with sparsity `s` receives, `⌈s·n²/2⌉`.
pub fn edge_count(n: usize, sparsity: f64) -> Result<usize> {
    let max = n * n.saturating_sub(1) / 2;
    if !(sparsity > 0.0 && sparsity <= 1.0) {
        return Err(Error::InvalidSparsity { n, sparsity });
    }
    // the slack absorbs rounding in products such as 0.1·100/2
    let pairs = (sparsity * (n * n) as f64 / 2.0 - 1e-9).ceil() as usize;
    if pairs > max {
        return Err(Error::InvalidSparsity { n, sparsity });
    }
    Ok(pairs)
}

/// Uniformly drawn distinct vertex pairs until `⌈s·n²/2⌉` edges exist;
/// repeated draws are rejected.
pub fn random_graph<R: Rng + ?Sized>(n: usize, sparsity: f64, rng: &mut R) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidGraph(format!("random graphs need at least 3 vertices, got {n}")));
    }
    let target = edge_count(n, sparsity)?;
    let mut seen = HashSet::with_capacity(target);
    let mut edges = Vec::with_capacity(target);
    while edges.len() < target {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let e = (i.min(j), i.max(j));
        if seen.insert(e) {
            edges.push(e);
        }
    }
    Ok(Graph { n, edges })
}

/// `⌈s·n²⌉` distinct directed arcs `(i, j)`, `i ≠ j`, drawn uniformly with rejection.
pub fn random_arcs<R: Rng + ?Sized>(n: usize, sparsity: f64, rng: &mut R) -> Result<Vec<(usize, usize)>> {
    if n < 2 || !(sparsity > 0.0 && sparsity <= 1.0) {
        return Err(Error::InvalidSparsity { n, sparsity });
    }
    let target = (sparsity * (n * n) as f64 - 1e-9).ceil() as usize;
    if target > n * (n - 1) {
        return Err(Error::InvalidSparsity { n, sparsity });
    }
    let mut seen = HashSet::with_capacity(target);
    let mut arcs = Vec::with_capacity(target);
    while arcs.len() < target {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j && seen.insert((i, j)) {
            arcs.push((i, j));
        }
    }
    Ok(arcs)
}

#[derive(Debug, Clone)]
pub struct LaplacianBundle {
    /// `L = D − A`
    pub l: DQMatrix,
    pub degrees: Vec<f64>,
    /// `A_ij = q_i*·q_j` on edges
    pub a: DQMatrix,
}

impl LaplacianBundle {
    pub fn degree_matrix(&self) -> DQMatrix {
        DQMatrix::from_diagonal(&self.degrees.iter().map(|&d| DualNumber::real(d)).collect::<Vec<_>>())
    }
}

/// Laplacian of `g` for unit poses `q`.
///
/// `conj(q)` is a null vector of `L`, and `L = diag(q)*·L₀·diag(q)` for the
/// real graph Laplacian `L₀`, so both share their eigenvalues.
pub fn laplacian(g: &Graph, q: &DQVector) -> Result<LaplacianBundle> {
    let n = g.n();
    if q.len() != n {
        return Err(Error::dims(n, q.len()));
    }
    if let Some(index) = q.iter().position(|p| !p.is_unit()) {
        return Err(Error::NotUnitPose { index });
    }
    let mut a = DQMatrix::zeros(n, n);
    for &(i, j) in g.edges() {
        let aij = q[i].conj() * q[j];
        a.set(i, j, aij);
        a.set(j, i, aij.conj());
    }
    let degrees: Vec<f64> = g.degrees().into_iter().map(|d| d as f64).collect();
    let l = DQMatrix::from_fn(n, n, |i, j| {
        let d = if i == j { DualQuaternion::real(degrees[i]) } else { DualQuaternion::ZERO };
        d - a.get(i, j)
    });
    Ok(LaplacianBundle { l, degrees, a })
}

/// `(e_λ, e_L)`: the mean eigen-residual `‖L·u_i − u_i·λ_i‖_2R` over the
/// returned pairs and the relative reconstruction error
/// `‖L − Σ λ_i·u_i·u_i*‖_FR / ‖L‖_FR`.
pub fn spectrum_errors(l: &DQMatrix, spectrum: &SpectrumResult) -> Result<(f64, f64)> {
    let mut e_lambda = 0.0;
    for p in &spectrum.pairs {
        e_lambda += p.residual_against(l)?;
    }
    if !spectrum.pairs.is_empty() {
        e_lambda /= spectrum.pairs.len() as f64;
    }
    let norm = l.norm_fr();
    let e_l = if norm == 0.0 { 0.0 } else { l.sub(&spectrum.reconstruct())?.norm_fr() / norm };
    Ok((e_lambda, e_l))
}

/// Eigenvalues `2 − 2cos(2πk/n)` of the real `n`-cycle Laplacian, descending.
pub fn circle_spectrum(n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|k| 2.0 - 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn write_edges_to(w: impl Write, edges: &[(usize, usize)]) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    for &(i, j) in edges {
        out.write_record([i.to_string(), j.to_string()])?;
    }
    out.flush().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(())
}

pub fn read_edges_from(r: impl Read) -> Result<Vec<(usize, usize)>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(r);
    rdr.deserialize::<(usize, usize)>().map(|e| e.map_err(Error::from)).collect()
}

pub fn write_edges(path: &Path, edges: &[(usize, usize)]) -> Result<()> {
    write_edges_to(io::create(path)?, edges)
}

pub fn read_edges(path: &Path) -> Result<Vec<(usize, usize)>> {
    read_edges_from(io::open(path)?)
}
