//! Data-parallel helpers. With the `parallel` feature the work is spread
//! over the rayon pool; without it (or with [`Execution::Sequential`]) the
//! same closures run on the calling thread. Results are always returned in
//! input order, so reports do not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Execution::Sequential
        }
    }
}

pub fn map<T, R, Fun>(exec: Execution, items: &[T], f: Fun) -> Vec<R>
where
    T: Sync,
    R: Send,
    Fun: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
    }
}

/// `f(i)` for `i in 0..n`, in order.
pub fn map_range<R, Fun>(exec: Execution, n: usize, f: Fun) -> Vec<R>
where
    R: Send,
    Fun: Fn(usize) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
    }
}

/// The result for the smallest index where `f` returns `Some`.
pub fn find_first<R, Fun>(exec: Execution, n: usize, f: Fun) -> Option<R>
where
    R: Send,
    Fun: Fn(usize) -> Option<R> + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..n).find_map(f),
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..n).into_par_iter().find_map_first(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u32> = (0..1000).collect();
        let seq = map(Execution::Sequential, &items, |x| x * 2);
        let dflt = map(Execution::default(), &items, |x| x * 2);
        assert_eq!(seq, dflt);
        assert_eq!(
            find_first(Execution::default(), 1000, |i| (i % 97 == 96).then_some(i)),
            Some(96)
        );
    }
}
