//! Execution policy for the data-parallel kernels.
//!
//! Every batch routine (Monte Carlo sampling, basis sweeps, orbit grids,
//! per-degree tables) takes an [`Exec`]. With the `parallel` feature the
//! `Parallel` policy runs on rayon's global pool; without it both policies
//! run the same sequential loop. Results are always collected in index
//! order, so reductions downstream are independent of scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this policy actually fans out to worker threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Evaluates `f(0..n)` and returns the results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Maximum of `f(0..n)`; `0.0` for an empty range. NaN propagates.
    pub fn max_f64<F>(self, n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        let nan_max = |a: f64, b: f64| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) };
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return (0..n).into_par_iter().map(f).reduce(|| 0.0, nan_max);
        }
        (0..n).map(f).fold(0.0, nan_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree() {
        let f = |i: usize| ((i * 37) % 101) as f64;
        assert_eq!(Exec::Sequential.map(500, f), Exec::Parallel.map(500, f));
        assert_eq!(Exec::Sequential.max_f64(500, f), Exec::Parallel.max_f64(500, f));
        assert_eq!(Exec::Parallel.max_f64(0, f), 0.0);
    }

    #[test]
    fn nan_is_not_swallowed() {
        let f = |i: usize| if i == 3 { f64::NAN } else { 1.0 };
        assert!(Exec::Sequential.max_f64(10, f).is_nan());
        assert!(Exec::Parallel.max_f64(10, f).is_nan());
    }
}
