//! Row-parallel execution helpers.
//!
//! With the `parallel` feature, row loops over matrices with at least
//! [`PAR_MIN_ROWS`] rows run on the rayon pool. Each row is computed by the
//! same sequential code either way, so results are bit-identical across
//! execution modes.

use crate::scalar::DualQuaternion;

/// Smallest row count for which [`Execution::Auto`] goes parallel.
pub const PAR_MIN_ROWS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Parallel when the `parallel` feature is on; sequential otherwise.
    Parallel,
    /// Parallel for large inputs only.
    #[default]
    Auto,
}

impl Execution {
    pub fn is_parallel(self, rows: usize) -> bool {
        cfg!(feature = "parallel")
            && match self {
                Execution::Sequential => false,
                Execution::Parallel => true,
                Execution::Auto => rows >= PAR_MIN_ROWS,
            }
    }
}

/// Calls `f(row_index, row)` for every `cols`-wide row of `data`.
pub(crate) fn for_each_row<F>(data: &mut [DualQuaternion], cols: usize, exec: Execution, f: F)
where
    F: Fn(usize, &mut [DualQuaternion]) + Sync + Send,
{
    if cols == 0 {
        return;
    }
    let rows = data.len() / cols;
    #[cfg(feature = "parallel")]
    if exec.is_parallel(rows) {
        use rayon::prelude::*;
        data.par_chunks_mut(cols).enumerate().for_each(|(i, row)| f(i, row));
        return;
    }
    let _ = (rows, exec);
    data.chunks_mut(cols).enumerate().for_each(|(i, row)| f(i, row));
}

/// Order-preserving map over `0..count`, fanned out when `parallel` is on.
pub fn map_indices<T, F>(count: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !matches!(exec, Execution::Sequential) {
        use rayon::prelude::*;
        return (0..count).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..count).map(f).collect()
}
