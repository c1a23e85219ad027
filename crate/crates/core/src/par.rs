//! Data-parallel reductions over index ranges.
//!
//! With the `parallel` feature (default) [`Strategy::Parallel`] runs on the
//! current rayon pool; without it every strategy runs sequentially. Results
//! are exact integer sums, so they do not depend on how the range is split.

use std::ops::Range;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

/// Below this many indices the parallel path is not worth its overhead.
const MIN_PARALLEL_LEN: u64 = 1 << 10;

/// Number of chunks the parallel path splits a range into.
#[cfg(feature = "parallel")]
const CHUNKS: u64 = 256;

/// `sum_{i in range} f(i)`.
pub fn sum_range<F>(range: Range<u64>, strategy: Strategy, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    let len = range.end.saturating_sub(range.start);
    match strategy {
        Strategy::Parallel if len >= MIN_PARALLEL_LEN => parallel_sum(range, f),
        _ => range.map(f).sum(),
    }
}

#[cfg(feature = "parallel")]
fn parallel_sum<F>(range: Range<u64>, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    use rayon::prelude::*;
    let len = range.end - range.start;
    let chunk = len.div_ceil(CHUNKS);
    (0..len.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let lo = range.start + c * chunk;
            let hi = (lo + chunk).min(range.end);
            (lo..hi).map(&f).sum::<u64>()
        })
        .sum()
}

#[cfg(not(feature = "parallel"))]
fn parallel_sum<F>(range: Range<u64>, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    range.map(f).sum()
}

/// Maps `f` over `items` preserving order, in parallel when enabled.
pub fn map_ordered<T, U, F>(items: &[T], strategy: Strategy, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}
