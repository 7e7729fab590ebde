//! Order-preserving batch evaluation. With the `parallel` feature the work is
//! spread over the rayon pool; without it everything runs on the caller's
//! thread.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every item, preserving order.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    map_sequential(items, f)
}

/// Always single-threaded; the baseline the benches compare against.
pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// True when `map` fans out over threads.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
