//! Parallel or sequential execution of independent work items.
//!
//! With the `parallel` feature off, [`Exec::Parallel`] silently runs
//! sequentially, so callers never need to branch on the feature.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Maps `f` over a slice, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Returns the first error produced by `f` over `0..n`, if any.
    ///
    /// In parallel mode "first" means lowest index among the failures.
    pub fn try_for_range<E, F>(self, n: usize, f: F) -> Result<(), E>
    where
        E: Send,
        F: Fn(usize) -> Result<(), E> + Sync + Send,
    {
        let mut errs: Vec<(usize, E)> = self
            .map_range(n, |i| f(i).err().map(|e| (i, e)))
            .into_iter()
            .flatten()
            .collect();
        if errs.is_empty() {
            Ok(())
        } else {
            errs.sort_by_key(|(i, _)| *i);
            Err(errs.swap_remove(0).1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let a = Exec::Parallel.map_range(100, |i| i * i);
        let b = Exec::Sequential.map_range(100, |i| i * i);
        assert_eq!(a, b);
    }

    #[test]
    fn first_error_is_lowest_index() {
        let r = Exec::Parallel.try_for_range(50, |i| if i % 7 == 3 { Err(i) } else { Ok(()) });
        assert_eq!(r, Err(3));
    }
}
