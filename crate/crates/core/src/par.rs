//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper returns results in input order, so output never depends on
//! the worker count. With the `parallel` feature disabled, or with
//! `jobs == 1`, work runs on the calling thread.

use std::ops::Range;

/// Worker-count setting for a parallel stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Jobs(usize);

impl Jobs {
    /// Exactly `n` workers (at least one).
    pub fn new(n: usize) -> Self {
        Jobs(n.max(1))
    }

    pub fn sequential() -> Self {
        Jobs(1)
    }

    /// One worker per available core.
    pub fn all() -> Self {
        Jobs(std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn is_sequential(self) -> bool {
        self.0 == 1 || !cfg!(feature = "parallel")
    }
}

impl Default for Jobs {
    fn default() -> Self {
        Jobs::all()
    }
}

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(jobs: Jobs, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.get()).build() {
        Ok(pool) => pool.install(f),
        Err(e) => {
            log::warn!("could not start a {}-thread pool ({e}); running inline", jobs.get());
            f()
        }
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(jobs: Jobs, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if jobs.is_sequential() || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        with_pool(jobs, || items.par_iter().map(&f).collect())
    }
    #[cfg(not(feature = "parallel"))]
    unreachable!()
}

/// Splits `range` into contiguous chunks of at most `chunk` values and maps
/// `f` over the chunks, returning per-chunk results in ascending order.
pub fn map_chunks<R, F>(jobs: Jobs, range: Range<u64>, chunk: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(Range<u64>) -> R + Sync + Send,
{
    let chunk = chunk.max(1);
    let len = range.end.saturating_sub(range.start);
    let count = len.div_ceil(chunk);
    let piece = |i: u64| {
        let lo = range.start + i * chunk;
        lo..(lo + chunk).min(range.end)
    };
    if jobs.is_sequential() || count < 2 {
        return (0..count).map(|i| f(piece(i))).collect();
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        with_pool(jobs, || (0..count).into_par_iter().map(|i| f(piece(i))).collect())
    }
    #[cfg(not(feature = "parallel"))]
    unreachable!()
}
