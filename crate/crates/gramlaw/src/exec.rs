//! Execution strategy for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) per-item work is distributed over
//! a rayon pool; without it everything runs sequentially. Both paths give
//! bit-identical results in every mode: values are computed independently
//! per item and then reduced in emission order, so float summation order
//! never depends on thread scheduling.

use crate::scalar::Scalar;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sequential reference path: stream, apply, fold in order.
pub fn sum_ordered_seq<T, S, F>(items: impl Iterator<Item = T>, f: F) -> (S, u64)
where
    S: Scalar,
    F: Fn(T) -> S,
{
    let mut acc = S::zero();
    let mut count = 0u64;
    for item in items {
        acc = acc + f(item);
        count += 1;
    }
    (acc, count)
}

/// Parallel path: materialize, map on the pool, fold in emission order.
#[cfg(feature = "parallel")]
pub fn sum_ordered_par<T, S, F>(items: impl Iterator<Item = T>, f: F) -> (S, u64)
where
    T: Send,
    S: Scalar,
    F: Fn(T) -> S + Sync + Send,
{
    let items: Vec<T> = items.collect();
    let values: Vec<S> = items.into_par_iter().map(f).collect();
    let count = values.len() as u64;
    let sum = values.into_iter().fold(S::zero(), |acc, v| acc + v);
    (sum, count)
}

/// Applies `f` to every item and sums the results in emission order,
/// returning the sum and the item count.
#[cfg(feature = "parallel")]
pub fn sum_ordered<T, S, F>(items: impl Iterator<Item = T>, f: F) -> (S, u64)
where
    T: Send,
    S: Scalar,
    F: Fn(T) -> S + Sync + Send,
{
    sum_ordered_par(items, f)
}

#[cfg(not(feature = "parallel"))]
pub fn sum_ordered<T, S, F>(items: impl Iterator<Item = T>, f: F) -> (S, u64)
where
    T: Send,
    S: Scalar,
    F: Fn(T) -> S + Sync + Send,
{
    sum_ordered_seq(items, f)
}

/// Order-preserving map, sequential.
pub fn map_ordered_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Order-preserving map on the rayon pool.
#[cfg(feature = "parallel")]
pub fn map_ordered_par<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

/// Order-preserving map with the configured strategy.
#[cfg(feature = "parallel")]
pub fn map_ordered<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    map_ordered_par(items, f)
}

#[cfg(not(feature = "parallel"))]
pub fn map_ordered<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    map_ordered_seq(items, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_matches_sequential_reference() {
        let f = |v: i64| (v as f64) * 0.1;
        let (seq, n_seq) = sum_ordered_seq(0..1000i64, f);
        let (via_dispatch, n) = sum_ordered(0..1000i64, f);
        assert_eq!(n, n_seq);
        // bitwise identical, not just approximately equal
        assert_eq!(seq.to_bits(), via_dispatch.to_bits());

        #[cfg(feature = "parallel")]
        {
            let (par, n_par) = sum_ordered_par(0..1000i64, f);
            assert_eq!(n_par, n_seq);
            assert_eq!(seq.to_bits(), par.to_bits());
        }
    }

    #[test]
    fn map_preserves_order() {
        let doubled = map_ordered((0..100).collect(), |v: i32| v * 2);
        assert_eq!(doubled, (0..100).map(|v| v * 2).collect::<Vec<_>>());
    }
}
