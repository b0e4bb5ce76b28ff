//! Dual quaternion linear algebra with Hermitian eigensolvers.
//!
//! The crate covers scalar arithmetic over dual numbers, quaternions and dual
//! quaternions; dense vectors and matrices with their dual-number and real
//! norms; projections onto unit dual quaternions; the power method and
//! deflation for Hermitian matrices; dual quaternion graph Laplacians; and a
//! rank-one completion solver for pose-graph SLAM.
//!
//! ```
//! use dqpower::{all_eigenpairs, circle_graph, laplacian, DQVector, DeflationOptions, DualQuaternion, PowerConfig};
//!
//! let g = circle_graph(4).unwrap();
//! let poses = DQVector::from_fn(4, |_| DualQuaternion::ONE);
//! let l = laplacian(&g, &poses).unwrap().l;
//! let spectrum = all_eigenpairs(&l, &PowerConfig::default(), &DeflationOptions::default()).unwrap();
//! assert!((spectrum.pairs[0].value.st - 4.0).abs() < 1e-6);
//! ```
//!
//! With the default `parallel` feature, large matrix products and
//! independent experiment repetitions run on the rayon pool. Results do not
//! depend on the execution mode.

pub mod eigen;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod linalg;
pub mod par;
pub mod projection;
pub mod scalar;
pub mod slam;

pub use eigen::{
    all_eigenpairs, best_rank_one, power_method, recover_dual_part, singular_values, DeflationOptions, EigenPair,
    PowerConfig, SpectrumResult, TracePoint,
};
pub use error::{Error, Result};
pub use graph::{circle_graph, laplacian, random_graph, spectrum_errors, Graph, LaplacianBundle};
pub use linalg::{DQMatrix, DQVector};
pub use par::Execution;
pub use projection::{project_unit_dq, project_unit_vec, random_unit_dq, random_unit_vec};
pub use scalar::{DualNumber, DualQuaternion, Quaternion};
pub use slam::{build_problem, slam_errors, solve, GaugeAlignment, PoseGraph, SlamConfig, SlamResult, X1Update};
