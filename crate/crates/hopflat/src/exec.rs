//! Execution-mode plumbing: data-parallel loops with a sequential fallback.
//!
//! The heavy loops in this crate (sparse traces over computational basis states,
//! exhaustive verification sweeps) are embarrassingly parallel, and all
//! reductions are sums of exact rationals, so results are identical regardless
//! of scheduling. The `parallel` feature gates the rayon dependency; without it
//! every entry point runs sequentially.

/// How to drive a data-parallel loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Uses the global rayon pool. Falls back to sequential when the crate is
    /// built without the `parallel` feature.
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Maps `f` over `0..n` and folds the results with `combine`, starting from
/// `identity`. `combine` must be associative; all uses here are exact sums.
pub fn map_reduce<T, F, C, I>(mode: ExecMode, n: u64, identity: I, f: F, combine: C) -> T
where
    T: Send,
    F: Fn(u64) -> T + Sync,
    C: Fn(T, T) -> T + Sync + Send,
    I: Fn() -> T + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..n).map(&f).fold(identity(), &combine),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                (0..n)
                    .into_par_iter()
                    .map(&f)
                    .reduce(&identity, &combine)
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..n).map(&f).fold(identity(), &combine)
            }
        }
    }
}

/// Collects `f(i)` for `0..n` preserving index order.
pub fn map_collect<T, F>(mode: ExecMode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..n).map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..n).map(f).collect()
            }
        }
    }
}

/// Configures the global thread pool size. Call once, before any parallel work.
/// Ignored without the `parallel` feature or if a pool already exists.
pub fn set_jobs(jobs: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_and_seq_agree() {
        let f = |i: u64| i * i;
        let seq = map_reduce(ExecMode::Sequential, 1000, || 0u64, f, |a, b| a + b);
        let par = map_reduce(ExecMode::Parallel, 1000, || 0u64, f, |a, b| a + b);
        assert_eq!(seq, par);
    }
}
