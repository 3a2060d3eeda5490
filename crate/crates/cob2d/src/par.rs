//! Data-parallel helpers with a sequential fallback.
//!
//! Independent evaluations (property-test iterations, checker families,
//! acceptance batches) go through [`par_map`]. With the default `parallel`
//! feature the work is distributed via rayon; without it the same calls run
//! sequentially. Output order is the input order in both modes, so reports
//! are deterministic regardless of schedule.

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}
