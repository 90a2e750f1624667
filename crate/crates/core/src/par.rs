//! Execution strategy for the data-parallel search loops.
//!
//! All helpers here are order-preserving: `find_first` returns the candidate
//! with the smallest index regardless of how the work was scheduled, and
//! `map` returns results in index order. With the `parallel` feature
//! disabled, [`Exec::Parallel`] silently runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Smallest `i < n` for which `f(i)` is `Some`, together with its payload.
pub fn find_first<T, F>(exec: Exec, n: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().find_map_first(|i| f(i).map(|t| (i, t)));
    }
    let _ = exec;
    (0..n).find_map(|i| f(i).map(|t| (i, t)))
}

/// Same as [`find_first`] over an explicit list of items.
pub fn find_first_in<I, T, F>(exec: Exec, items: &[I], f: F) -> Option<(usize, T)>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> Option<T> + Sync + Send,
{
    find_first(exec, items.len(), |i| f(&items[i]))
}

/// `f(0), ..., f(n-1)` in index order.
pub fn map<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// First index whose predicate fails, if any.
pub fn first_failure<F>(exec: Exec, n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    find_first(exec, n, |i| (!pred(i)).then_some(())).map(|(i, ())| i)
}
