//! Sequential or data-parallel execution of the embarrassingly parallel
//! loops (pair counting, enumeration sweeps, parameter grids).
//!
//! Without the `parallel` feature every mode runs sequentially. Results never
//! depend on the mode: reductions are over exact integers or order-preserving
//! collects.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Order-preserving map over `0..len`.
    pub fn map_range<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Order-preserving map over a slice.
    pub fn map<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Sums fixed-length integer count vectors produced per index.
    pub fn sum_counts<F>(self, len: usize, width: usize, f: F) -> Vec<u64>
    where
        F: Fn(usize, &mut [u64]) + Sync + Send,
    {
        let fold = |mut acc: Vec<u64>, i: usize| {
            f(i, &mut acc);
            acc
        };
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..len)
                .into_par_iter()
                .fold(|| vec![0u64; width], fold)
                .reduce(
                    || vec![0u64; width],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                );
        }
        (0..len).fold(vec![0u64; width], fold)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let f = |i: usize, acc: &mut [u64]| acc[i % 3] += i as u64;
        assert_eq!(
            Execution::Sequential.sum_counts(1000, 3, f),
            Execution::Parallel.sum_counts(1000, 3, f)
        );
        assert_eq!(
            Execution::Sequential.map_range(50, |i| i * i),
            Execution::Parallel.map_range(50, |i| i * i)
        );
    }
}
