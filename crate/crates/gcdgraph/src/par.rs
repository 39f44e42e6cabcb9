//! Data-parallel helpers. With the `parallel` feature (on by default) the
//! maps fan out over rayon's thread pool; without it they degrade to plain
//! sequential iteration with identical outputs, so results never depend on
//! the feature or the thread count.

#[cfg(feature = "parallel")]
pub(crate) fn map_indices<U: Send>(n: u64, f: impl Fn(u64) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indices<U>(n: u64, f: impl Fn(u64) -> U) -> Vec<U> {
    (0..n).map(f).collect()
}
