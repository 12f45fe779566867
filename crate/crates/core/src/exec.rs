//! Execution policy for the data-parallel kernels.
//!
//! With the `parallel` feature (on by default) `Exec::Parallel` dispatches to
//! rayon; without it every policy runs sequentially. Results never depend on
//! the policy: parallel kernels merge into ordered containers.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
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
    /// Inputs smaller than this stay sequential even under `Parallel`.
    #[cfg(feature = "parallel")]
    const MIN_PARALLEL_LEN: usize = 64;

    #[cfg(feature = "parallel")]
    fn go_parallel(self, len: usize) -> bool {
        self == Exec::Parallel && len >= Self::MIN_PARALLEL_LEN
    }

    /// Order-preserving map.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.go_parallel(items.len()) {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving flat map.
    pub fn flat_map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> Vec<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.go_parallel(items.len()) {
            return items.par_iter().flat_map_iter(f).collect();
        }
        items.iter().flat_map(f).collect()
    }

    /// Order-preserving filter.
    pub fn filter<T, F>(self, items: Vec<T>, f: F) -> Vec<T>
    where
        T: Send + Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.go_parallel(items.len()) {
            return items.into_par_iter().filter(|x| f(x)).collect();
        }
        items.into_iter().filter(|x| f(x)).collect()
    }

    /// First item (in input order) satisfying the predicate.
    pub fn find_first<T, F>(self, items: &[T], f: F) -> Option<&T>
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.go_parallel(items.len()) {
            return items.par_iter().find_first(|x| f(x));
        }
        items.iter().find(|x| f(x))
    }

    pub fn all<T, F>(self, items: &[T], f: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.go_parallel(items.len()) {
            return items.par_iter().all(f);
        }
        items.iter().all(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(exec.map(&xs, |x| x * 2)[999], 1998);
            assert_eq!(exec.flat_map(&xs, |&x| vec![x; 2]).len(), 2000);
            assert_eq!(exec.filter(xs.clone(), |x| x % 3 == 0).len(), 334);
            assert_eq!(exec.find_first(&xs, |&x| x > 500), Some(&501));
            assert!(exec.all(&xs, |&x| x < 1000));
        }
    }
}
