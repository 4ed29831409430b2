//! Sequential and data-parallel drivers for per-element loops.
//!
//! Kernels in this crate are written as "compute element `k` of a contiguous
//! output slice" closures. Each element is produced independently, so the
//! parallel and sequential drivers give bit-identical results.
//!
//! The parallel driver needs the `parallel` cargo feature (on by default).
//! Without it every strategy runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many elements [`Strategy::Auto`] stays sequential.
pub const PARALLEL_THRESHOLD: usize = 1 << 14;

#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Parallel for large outputs when the `parallel` feature is enabled.
    #[default]
    Auto,
    Sequential,
    /// Parallel regardless of size when the `parallel` feature is enabled.
    Parallel,
}

impl Strategy {
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    fn parallel_for(self, len: usize) -> bool {
        cfg!(feature = "parallel")
            && match self {
                Strategy::Auto => len >= PARALLEL_THRESHOLD,
                Strategy::Sequential => false,
                Strategy::Parallel => true,
            }
    }
}

/// Calls `f(k, &mut out[k])` for every `k`.
pub fn for_each_indexed<T, F>(strategy: Strategy, out: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.parallel_for(out.len()) {
        out.par_iter_mut()
            .with_min_len(MIN_CHUNK)
            .enumerate()
            .for_each(|(k, o)| f(k, o));
        return;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = strategy;
    out.iter_mut().enumerate().for_each(|(k, o)| f(k, o));
}

/// Whether any `k` in `0..len` satisfies `pred`.
pub fn any_index<F>(strategy: Strategy, len: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.parallel_for(len) {
        return (0..len).into_par_iter().with_min_len(MIN_CHUNK).any(pred);
    }
    #[cfg(not(feature = "parallel"))]
    let _ = strategy;
    (0..len).any(pred)
}
