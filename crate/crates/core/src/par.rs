//! Execution policy for the data-parallel inner loops.
//!
//! Every sweep in the crate (random trial suites, direction grids, covector
//! grids, per-triangle phases) goes through [`map_range`], so results are
//! collected in index order and are identical under both policies.

use std::sync::Once;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "G2CALIB_THREADS";

/// How a sweep is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    /// Rayon work stealing when the `parallel` feature is on, sequential otherwise.
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this policy will actually fan out to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

static THREAD_CAP: Once = Once::new();

/// Install the global worker pool, honouring [`THREADS_ENV`] when set.
///
/// Idempotent; only the first call has an effect. Returns the cap that was
/// read from the environment, if any.
pub fn init_thread_pool() -> Option<usize> {
    let cap = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0);
    THREAD_CAP.call_once(|| {
        #[cfg(feature = "parallel")]
        if let Some(n) = cap {
            // A pool built elsewhere first wins; the cap is then advisory.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    });
    cap
}

/// Evaluate `f(0..n)` and collect the results in index order.
pub fn map_range<R, F>(exec: Exec, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Evaluate `f` on every element of `items`, preserving order.
pub fn map_slice<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_range(exec, items.len(), |i| f(&items[i]))
}

/// Largest value of `f` over `0..n` together with its index (first on ties).
pub fn argmax_range<F>(exec: Exec, n: usize, f: F) -> Option<(usize, f64)>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let values = map_range(exec, n, f);
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        match best {
            Some((_, b)) if !(v > b) => {}
            _ => best = Some((i, v)),
        }
    }
    best
}
