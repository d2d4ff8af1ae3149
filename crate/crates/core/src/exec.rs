//! Execution strategy for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) the hot loops run on the rayon
//! global pool; without it every strategy degrades to the sequential path.
//! Results are always returned in input order, so output never depends on
//! scheduling.

/// How embarrassingly parallel loops are executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    /// Rayon work stealing. Identical to `Sequential` when the crate is
    /// built without the `parallel` feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Applies `f` to `0..len` and collects in index order.
    pub fn map_range<R, F>(self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Applies `f` to every item and collects in input order.
    pub fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Returns the result for the smallest index in `0..len` where `f`
    /// yields `Some`, regardless of which thread finds it first.
    pub fn find_first<R, F>(self, len: u64, f: F) -> Option<R>
    where
        R: Send,
        F: Fn(u64) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return (0..len).into_par_iter().find_map_first(f);
        }
        (0..len).find_map(f)
    }
}
