//! Order-preserving trial runners.
//!
//! Each trial receives only its index and derives its own random stream, so
//! the parallel and sequential runners return identical vectors.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_trials_sequential<T, F>(count: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    (0..count).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_trials_parallel<T, F>(count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    (0..count).into_par_iter().map(f).collect()
}

/// Parallel when the `parallel` feature is on, sequential otherwise.
pub fn map_trials<T, F>(count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_trials_parallel(count, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_trials_sequential(count, f)
    }
}
