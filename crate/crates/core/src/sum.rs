//! Pairwise (cascade) summation.
//!
//! Rounding error grows like `O(ε log n)` instead of `O(ε n)`; the split points
//! depend only on the length, so the result is reproducible.

use std::ops::Add;

const BLOCK: usize = 64;

/// Pairwise sum of `f(0) + ... + f(n-1)` without materializing the terms.
pub fn pairwise_sum_by<T, F>(n: usize, f: &F) -> T
where
    T: Copy + Default + Add<Output = T>,
    F: Fn(usize) -> T,
{
    sum_range(0, n, f)
}

fn sum_range<T, F>(lo: usize, hi: usize, f: &F) -> T
where
    T: Copy + Default + Add<Output = T>,
    F: Fn(usize) -> T,
{
    if hi - lo <= BLOCK {
        let mut acc = T::default();
        for i in lo..hi {
            acc = acc + f(i);
        }
        acc
    } else {
        let mid = lo + (hi - lo) / 2;
        sum_range(lo, mid, f) + sum_range(mid, hi, f)
    }
}

/// Pairwise sum of a slice.
pub fn pairwise_sum<T>(values: &[T]) -> T
where
    T: Copy + Default + Add<Output = T>,
{
    pairwise_sum_by(values.len(), &|i| values[i])
}
