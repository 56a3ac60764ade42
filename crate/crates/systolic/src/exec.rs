//! Execution policy for data-parallel inner loops.
//!
//! With the `parallel` feature the helpers below fan work out over rayon and
//! preserve input order, so results are identical to the sequential path. The
//! runtime switch exists so benchmarks (and callers that want to pin work to
//! one core) can compare both paths in a single build.

#[cfg(feature = "parallel")]
mod imp {
    use rayon::prelude::*;
    use std::sync::atomic::{AtomicBool, Ordering};

    static PARALLEL: AtomicBool = AtomicBool::new(true);

    /// Enable or disable the rayon paths at runtime.
    pub fn set_parallel(on: bool) {
        PARALLEL.store(on, Ordering::SeqCst);
    }

    /// Whether the rayon paths are currently in use.
    pub fn parallel_enabled() -> bool {
        PARALLEL.load(Ordering::SeqCst)
    }

    /// Order-preserving map over a slice.
    pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        if parallel_enabled() {
            items.par_iter().map(&f).collect()
        } else {
            items.iter().map(f).collect()
        }
    }

    /// Order-preserving map over an index range.
    pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        if parallel_enabled() {
            (0..n).into_par_iter().map(f).collect()
        } else {
            (0..n).map(f).collect()
        }
    }
}

#[cfg(not(feature = "parallel"))]
mod imp {
    /// No-op without the `parallel` feature.
    pub fn set_parallel(_on: bool) {}

    /// Always false without the `parallel` feature.
    pub fn parallel_enabled() -> bool {
        false
    }

    pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        items.iter().map(|t| f(t)).collect()
    }

    pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        (0..n).map(f).collect()
    }
}

pub use imp::{map_range, map_slice, parallel_enabled, set_parallel};
