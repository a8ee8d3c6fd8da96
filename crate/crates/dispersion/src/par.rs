//! Data-parallel helpers with a sequential fallback.
//!
//! Every call site is a pure map over independent items, so the two builds
//! are observationally identical.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n` and return the maximum, or `None` when `n == 0`.
#[cfg(feature = "parallel")]
pub fn max_over<F>(n: usize, f: F) -> Option<i64>
where
    F: Fn(usize) -> i64 + Sync + Send,
{
    (0..n).into_par_iter().map(f).max()
}

#[cfg(not(feature = "parallel"))]
pub fn max_over<F>(n: usize, f: F) -> Option<i64>
where
    F: Fn(usize) -> i64,
{
    (0..n).map(f).max()
}

/// Map `f` over a slice, preserving order.
#[cfg(feature = "parallel")]
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// First index in `0..n` where `pred` holds, if any. Under rayon the
/// lowest matching index is still returned.
#[cfg(feature = "parallel")]
pub fn find_first<F>(n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    (0..n).into_par_iter().find_first(|&i| pred(i))
}

#[cfg(not(feature = "parallel"))]
pub fn find_first<F>(n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool,
{
    (0..n).find(|&i| pred(i))
}
