//! Data-parallel execution helpers.
//!
//! With the `parallel` feature (the default) these fan out over rayon's
//! global thread pool; without it they run sequentially. Either way results
//! come back in input order, so callers stay deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `lo..hi`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_range<T, F>(lo: u64, hi: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    (lo..hi).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<T, F>(lo: u64, hi: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    (lo..hi).map(f).collect()
}

/// Maps `f` over `lo..hi`, keeping the `Some` results in index order.
#[cfg(feature = "parallel")]
pub fn filter_map_range<T, F>(lo: u64, hi: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    // rayon's collect preserves the encounter order of the range.
    (lo..hi).into_par_iter().filter_map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn filter_map_range<T, F>(lo: u64, hi: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> Option<T>,
{
    (lo..hi).filter_map(f).collect()
}

/// First index in `lo..hi` satisfying `pred`, honoring index order even
/// when the search runs in parallel.
#[cfg(feature = "parallel")]
pub fn find_first_range<F>(lo: u64, hi: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (lo..hi).into_par_iter().find_first(|&i| pred(i))
}

#[cfg(not(feature = "parallel"))]
pub fn find_first_range<F>(lo: u64, hi: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool,
{
    (lo..hi).find(|&i| pred(i))
}

/// True when all of `lo..hi` satisfy `f`.
#[cfg(feature = "parallel")]
pub fn all_range<F>(lo: u64, hi: u64, f: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (lo..hi).into_par_iter().all(f)
}

#[cfg(not(feature = "parallel"))]
pub fn all_range<F>(lo: u64, hi: u64, f: F) -> bool
where
    F: Fn(u64) -> bool,
{
    (lo..hi).all(f)
}

/// Reduces `items` with an associative `combine`, returning `identity` for
/// an empty input. Association order may differ between the parallel and
/// sequential builds, so `combine` must be associative for deterministic
/// results (exact arithmetic is; floating point is not).
#[cfg(feature = "parallel")]
pub fn reduce_assoc<T, F>(items: Vec<T>, identity: T, combine: F) -> T
where
    T: Send + Sync + Clone,
    F: Fn(T, T) -> T + Sync + Send,
{
    items
        .into_par_iter()
        .reduce(|| identity.clone(), |a, b| combine(a, b))
}

#[cfg(not(feature = "parallel"))]
pub fn reduce_assoc<T, F>(items: Vec<T>, identity: T, combine: F) -> T
where
    T: Clone,
    F: Fn(T, T) -> T,
{
    items.into_iter().fold(identity, combine)
}
