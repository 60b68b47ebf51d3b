//! Data-parallel sweep helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) `Mode::Parallel` runs on the
//! rayon pool; without it every mode runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for a verification sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Parallel,
    Sequential,
}

impl Default for Mode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Mode::Parallel
        } else {
            Mode::Sequential
        }
    }
}

/// True iff `f` holds for every element of `items`.
pub fn all<T, F>(mode: Mode, items: Vec<T>, f: F) -> bool
where
    T: Send,
    F: Fn(T) -> bool + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Mode::Parallel => items.into_par_iter().all(f),
        _ => items.into_iter().all(f),
    }
}

/// Applies `f` to every element, preserving input order.
pub fn map<T, U, F>(mode: Mode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Mode::Parallel => items.into_par_iter().map(f).collect(),
        _ => items.into_iter().map(f).collect(),
    }
}

/// Elements for which `f` fails, in input order.
pub fn failures<T, F>(mode: Mode, items: Vec<T>, f: F) -> Vec<T>
where
    T: Send + Clone,
    F: Fn(&T) -> bool + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Mode::Parallel => items.into_par_iter().filter(|t| !f(t)).collect(),
        _ => items.into_iter().filter(|t| !f(t)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let v: Vec<u64> = (0..1000).collect();
        for mode in [Mode::Parallel, Mode::Sequential] {
            assert!(all(mode, v.clone(), |x| x < 1000));
            assert_eq!(map(mode, v.clone(), |x| x * 2)[999], 1998);
            assert_eq!(failures(mode, v.clone(), |x| x % 100 != 0).len(), 10);
        }
    }
}
