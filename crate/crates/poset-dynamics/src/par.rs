//! Data-parallel map helpers. With the `parallel` feature (default) these
//! fan out over rayon's global pool; without it they run sequentially so the
//! crate builds without a thread-pool dependency.

#[cfg(feature = "parallel")]
mod imp {
    use rayon::prelude::*;

    pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        items.par_iter().map(f).collect()
    }

    pub fn map_range<U, F>(range: std::ops::Range<usize>, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        range.into_par_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
mod imp {
    pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        items.iter().map(f).collect()
    }

    pub fn map_range<U, F>(range: std::ops::Range<usize>, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        range.map(f).collect()
    }
}

pub(crate) use imp::{map_range, map_slice};
