use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{io, DQMatrix, DQVector};
use crate::scalar::{DualNumber, DualQuaternion};

/// Directed measurement graph: arc `(i, j)` carries a relative pose `q_ij`.
///
/// Noisy measurements need not be unit dual quaternions, so unit-ness is
/// checked on the poses in [`build_problem`] rather than here.
#[derive(Debug, Clone, PartialEq)]
pub struct PoseGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    measurements: Vec<DualQuaternion>,
    index: HashMap<(usize, usize), usize>,
}

impl PoseGraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>, measurements: Vec<DualQuaternion>) -> Result<Self> {
        if arcs.len() != measurements.len() {
            return Err(Error::dims(format!("{} measurements", arcs.len()), measurements.len()));
        }
        let mut index = HashMap::with_capacity(arcs.len());
        for (k, &(i, j)) in arcs.iter().enumerate() {
            if i == j || i >= n || j >= n {
                return Err(Error::InvalidGraph(format!("invalid arc ({i}, {j}) for {n} poses")));
            }
            if index.insert((i, j), k).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate arc ({i}, {j})")));
            }
        }
        Ok(PoseGraph { n, arcs, measurements, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn measurements(&self) -> &[DualQuaternion] {
        &self.measurements
    }

    pub fn get(&self, i: usize, j: usize) -> Option<DualQuaternion> {
        self.index.get(&(i, j)).map(|&k| self.measurements[k])
    }

    /// Observed entries of the measurement matrix, zero elsewhere.
    pub fn observed_matrix(&self) -> DQMatrix {
        let mut m = DQMatrix::zeros(self.n, self.n);
        for (&(i, j), &q) in self.arcs.iter().zip(&self.measurements) {
            m.set(i, j, q);
        }
        m
    }

    /// `½·Σ_{(i,j)∈E} |x_ij − q_ij|²`
    pub fn masked_objective(&self, x: &DQMatrix) -> DualNumber {
        let mut acc = DualNumber::ZERO;
        for (&(i, j), &q) in self.arcs.iter().zip(&self.measurements) {
            acc += (x.get(i, j) - q).magnitude_sq();
        }
        acc * 0.5
    }

    fn with_measurements(&self, measurements: Vec<DualQuaternion>) -> PoseGraph {
        PoseGraph { measurements, ..self.clone() }
    }
}

/// `X = x·x*` for `x = conj(poses)`, so that `X_ij = conj(p_i)·p_j`.
pub fn pose_matrix(poses: &DQVector) -> DQMatrix {
    DQMatrix::rank_one(DualNumber::ONE, &poses.conj_entries())
}

/// Noiseless relative measurements `q_ij = conj(p_i)·p_j` on the given arcs.
pub fn build_problem(poses: &DQVector, arcs: &[(usize, usize)]) -> Result<PoseGraph> {
    if let Some(index) = poses.iter().position(|p| !p.is_unit()) {
        return Err(Error::NotUnitPose { index });
    }
    let n = poses.len();
    if let Some(&(i, j)) = arcs.iter().find(|&&(i, j)| i >= n || j >= n) {
        return Err(Error::InvalidGraph(format!("invalid arc ({i}, {j}) for {n} poses")));
    }
    let meas = arcs.iter().map(|&(i, j)| poses[i].conj() * poses[j]).collect();
    PoseGraph::new(n, arcs.to_vec(), meas)
}

/// Adds i.i.d. Gaussian noise to all eight components of every observed
/// measurement, independently per arc, scaled so that
/// `‖N_E‖_FR / ‖Q_E‖_FR = level`. Returns the noisy graph and the realized level.
pub fn add_noise<R: Rng + ?Sized>(p: &PoseGraph, level: f64, rng: &mut R) -> Result<(PoseGraph, f64)> {
    if !(level >= 0.0) || !level.is_finite() {
        return Err(Error::InvalidConfig(format!("noise level must be non-negative, got {level}")));
    }
    if level == 0.0 || p.arcs.is_empty() {
        return Ok((p.clone(), 0.0));
    }
    let noise: Vec<[f64; 8]> = p
        .measurements
        .iter()
        .map(|_| {
            let mut a = [0.0; 8];
            for c in &mut a {
                *c = rng.sample(StandardNormal);
            }
            a
        })
        .collect();
    let q_norm = p.measurements.iter().map(|q| q.norm_2r_sq()).sum::<f64>().sqrt();
    let n_norm = noise.iter().flatten().map(|c| c * c).sum::<f64>().sqrt();
    let scale = level * q_norm / n_norm;
    let mut realized = 0.0;
    let meas = p
        .measurements
        .iter()
        .zip(&noise)
        .map(|(q, nz)| {
            let d = DualQuaternion::from_array(nz.map(|c| c * scale)).expect("finite noise");
            realized += d.norm_2r_sq();
            *q + d
        })
        .collect();
    Ok((p.with_measurements(meas), realized.sqrt() / q_norm))
}

#[derive(Serialize, Deserialize)]
struct ProblemFile {
    n: usize,
    arcs: Vec<[usize; 2]>,
    measurements: Vec<[f64; 8]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    poses: Option<Vec<[f64; 8]>>,
}

/// JSON problem `{"n", "arcs", "measurements"}`, with optional ground-truth `"poses"`.
pub fn write_problem_to(w: impl Write, p: &PoseGraph, poses: Option<&DQVector>) -> Result<()> {
    let file = ProblemFile {
        n: p.n,
        arcs: p.arcs.iter().map(|&(i, j)| [i, j]).collect(),
        measurements: p.measurements.iter().map(|q| q.to_array()).collect(),
        poses: poses.map(|x| x.iter().map(|q| q.to_array()).collect()),
    };
    Ok(serde_json::to_writer(w, &file)?)
}

pub fn read_problem_from(r: impl Read) -> Result<(PoseGraph, Option<DQVector>)> {
    let file: ProblemFile = serde_json::from_reader(r)?;
    let graph = PoseGraph::new(
        file.n,
        file.arcs.iter().map(|a| (a[0], a[1])).collect(),
        io::entries_from_arrays(&file.measurements)?,
    )?;
    let poses = match file.poses {
        Some(p) => {
            let v = DQVector::new(io::entries_from_arrays(&p)?)?;
            if v.len() != file.n {
                return Err(Error::dims(file.n, v.len()));
            }
            Some(v)
        }
        None => None,
    };
    Ok((graph, poses))
}

pub fn write_problem(path: &Path, p: &PoseGraph, poses: Option<&DQVector>) -> Result<()> {
    let mut w = io::create(path)?;
    write_problem_to(&mut w, p, poses)?;
    io::flush(w, path)
}

pub fn read_problem(path: &Path) -> Result<(PoseGraph, Option<DQVector>)> {
    read_problem_from(io::open(path)?)
}
