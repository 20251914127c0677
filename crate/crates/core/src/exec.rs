//! Execution strategy for the data-parallel kernels.
//!
//! Every kernel that fans out (histogram enumeration, jet counting, grid
//! checks) merges partial results by exact integer addition or by an
//! order-preserving collect, so the output does not depend on the strategy.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a kernel distributes its outer loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    /// Uses the rayon global pool. Falls back to sequential when the crate is
    /// built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// True if this strategy will actually run on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    pub(crate) fn map_reduce<T, M, R, I>(self, range: Range<u64>, identity: I, map: M, reduce: R) -> T
    where
        T: Send,
        M: Fn(u64) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
        I: Fn() -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            return range.into_par_iter().map(map).reduce(identity, reduce);
        }
        range.map(map).fold(identity(), reduce)
    }

    /// Maps over a slice, preserving order.
    pub(crate) fn map_collect<S, T, M>(self, items: &[S], map: M) -> Vec<T>
    where
        S: Sync,
        T: Send,
        M: Fn(&S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            return items.par_iter().map(map).collect();
        }
        items.iter().map(map).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let f = |i: u64| i * i % 7;
        let seq = Execution::Sequential.map_reduce(0..1000, || 0u64, f, |a, b| a + b);
        let par = Execution::Parallel.map_reduce(0..1000, || 0u64, f, |a, b| a + b);
        assert_eq!(seq, par);
        let xs: Vec<u32> = (0..100).collect();
        assert_eq!(Execution::Sequential.map_collect(&xs, |x| x + 1), Execution::Parallel.map_collect(&xs, |x| x + 1));
    }
}
