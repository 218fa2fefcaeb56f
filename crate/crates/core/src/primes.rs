//! Prime tables from a segmented sieve of Eratosthenes.

use crate::error::{Error, Result};

/// Largest sieve bound accepted by [`sieve_primes`].
pub const MAX_SIEVE_LIMIT: u64 = 2_000_000_000;

/// Odd numbers per segment; 32 KiB of flags fits in L1.
const SEGMENT_ODDS: usize = 1 << 15;

/// All primes `≤ limit`, ascending. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn largest(&self) -> Option<u64> {
        self.primes.last().copied()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    /// Number of primes `≤ x` (for `x ≤ limit`, this is `π(x)`).
    pub fn count_up_to(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }

    /// The table restricted to primes `≤ limit`.
    pub fn truncated(&self, limit: u64) -> PrimeTable {
        let limit = limit.min(self.limit);
        PrimeTable {
            limit,
            primes: self.primes[..self.count_up_to(limit)].to_vec(),
        }
    }

    /// The first `n` primes of the table, with the limit set to the last one.
    pub fn first(&self, n: usize) -> Option<PrimeTable> {
        if n == 0 || n > self.primes.len() {
            return None;
        }
        Some(PrimeTable {
            limit: self.primes[n - 1],
            primes: self.primes[..n].to_vec(),
        })
    }

    /// Builds a table from an explicit ascending list of primes. Intended for
    /// small hand-made tables; primality is checked by trial division.
    pub fn from_primes(primes: Vec<u64>) -> Result<PrimeTable> {
        if primes.is_empty() {
            return Err(Error::domain("prime list is empty"));
        }
        for w in primes.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::domain("primes must be strictly increasing"));
            }
        }
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime_trial(p)) {
            return Err(Error::domain(format!("{bad} is not prime")));
        }
        let limit = *primes.last().unwrap();
        Ok(PrimeTable { limit, primes })
    }
}

fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn simple_sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes up to and including `limit`.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::domain(format!(
            "sieve limit must be >= 2, got {limit}"
        )));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::domain(format!(
            "sieve limit {limit} exceeds the supported ceiling {MAX_SIEVE_LIMIT}"
        )));
    }

    let root = (limit as f64).sqrt() as u64 + 1;
    let base: Vec<u64> = simple_sieve(root as usize)
        .into_iter()
        .filter(|&p| p > 2)
        .collect();

    let estimate = (limit as f64 / (limit as f64).ln() * 1.15) as usize + 16;
    let mut primes = Vec::with_capacity(estimate);
    primes.push(2);

    // Segment k covers the odd numbers 2i+1 for i in [lo, lo + SEGMENT_ODDS).
    let total_odds = (limit as usize - 1) / 2 + 1; // odd numbers 1..=limit
    let mut flags = vec![true; SEGMENT_ODDS];
    // next[j] = index (in odd space) of the next multiple of base[j] to strike
    let mut next: Vec<usize> = base.iter().map(|&p| ((p * p) / 2) as usize).collect();

    let mut lo = 0usize;
    while lo < total_odds {
        let hi = (lo + SEGMENT_ODDS).min(total_odds);
        let seg = &mut flags[..hi - lo];
        seg.fill(true);
        for (j, &p) in base.iter().enumerate() {
            let p = p as usize;
            let mut m = next[j];
            while m < hi {
                seg[m - lo] = false;
                m += p;
            }
            next[j] = m;
        }
        for (k, &is_prime) in seg.iter().enumerate() {
            let i = lo + k;
            if is_prime && i > 0 {
                primes.push(2 * i as u64 + 1);
            }
        }
        lo = hi;
    }

    Ok(PrimeTable { limit, primes })
}

/// Upper bound for the n-th prime (Rosser–Schoenfeld style, n ≥ 6).
fn nth_prime_upper_bound(n: u64) -> u64 {
    if n < 6 {
        return 15;
    }
    let x = n as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64 + 3
}

/// The n-th prime, counting from `nth_prime(1) = 2`.
pub fn nth_prime(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::domain("nth_prime index must be >= 1"));
    }
    let table = sieve_primes(nth_prime_upper_bound(n))?;
    table
        .primes()
        .get(n as usize - 1)
        .copied()
        .ok_or_else(|| Error::domain(format!("index {n} beyond sieve bound")))
}

/// Table of the first `n` primes; its limit is `nth_prime(n)`.
pub fn first_n_primes(n: u64) -> Result<PrimeTable> {
    let p = nth_prime(n)?;
    Ok(sieve_primes(nth_prime_upper_bound(n))?.truncated(p))
}

/// Distinct prime factors of `n`, ascending.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&n| is_prime_trial(n)).collect()
    }

    #[test]
    fn small_tables() {
        assert_eq!(sieve_primes(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap().primes(), &[2]);
        assert_eq!(sieve_primes(3).unwrap().primes(), &[2, 3]);
        assert!(matches!(sieve_primes(1), Err(Error::Domain(_))));
        assert!(matches!(sieve_primes(0), Err(Error::Domain(_))));
    }

    #[test]
    fn matches_trial_division_across_segment_boundaries() {
        for limit in [97u64, 65_535, 65_537, 70_001, 200_003] {
            let table = sieve_primes(limit).unwrap();
            assert_eq!(
                table.primes(),
                trial_division_primes(limit).as_slice(),
                "limit {limit}"
            );
        }
    }

    #[test]
    fn prime_counts() {
        let t = sieve_primes(10_000).unwrap();
        assert_eq!(t.count_up_to(1000), 168);
        assert_eq!(t.count_up_to(10_000), 1229);
        assert_eq!(trial_division_primes(10_000).len(), 1229);
    }

    #[test]
    fn nth_prime_small() {
        assert_eq!(nth_prime(1).unwrap(), 2);
        assert_eq!(nth_prime(4).unwrap(), 7);
        assert_eq!(nth_prime(6).unwrap(), 13);
        assert_eq!(nth_prime(1000).unwrap(), 7919);
        assert!(nth_prime(0).is_err());
    }

    #[test]
    fn factors() {
        assert_eq!(distinct_prime_factors(1), Vec::<u64>::new());
        assert_eq!(distinct_prime_factors(12), vec![2, 3]);
        assert_eq!(distinct_prime_factors(97), vec![97]);
        assert_eq!(distinct_prime_factors(30), vec![2, 3, 5]);
    }

    #[test]
    fn from_primes_validates() {
        assert!(PrimeTable::from_primes(vec![2, 3, 5]).is_ok());
        assert!(PrimeTable::from_primes(vec![2, 4]).is_err());
        assert!(PrimeTable::from_primes(vec![3, 2]).is_err());
        assert!(PrimeTable::from_primes(vec![]).is_err());
    }
}
