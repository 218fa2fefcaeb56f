//! Finite prime Dirichlet series `X(τ) = Σ_p a_p e^{i(θ_p - τ log p)}`.
//!
//! The plain truncated prime zeta function is the case `a_p = p^{-σ}`, `θ_p = 0`;
//! a Dirichlet character supplies `θ_p = arg χ(p)` and zeroes the weights of
//! primes dividing its modulus. Frequencies and phases are stored in turns.

use std::f64::consts::TAU;

use crate::primes::PrimeTable;
use crate::sum::pairwise_sum_by;
use crate::trig::{cos_sin_turns, cos_turns};
use crate::ComplexValue;

#[derive(Debug, Clone)]
pub struct PrimeSeries {
    primes: Vec<u64>,
    /// `log p / 2π`
    freqs: Vec<f64>,
    weights: Vec<f64>,
    /// `θ_p / 2π`; empty when every phase is zero
    phases: Vec<f64>,
}

impl PrimeSeries {
    /// Terms `p^{-σ}` for every prime in the table.
    pub fn new(primes: &PrimeTable, sigma: f64) -> Self {
        let p = primes.primes().to_vec();
        let freqs = p.iter().map(|&p| (p as f64).ln() / TAU).collect();
        let weights = p
            .iter()
            .map(|&p| (-sigma * (p as f64).ln()).exp())
            .collect();
        PrimeSeries {
            primes: p,
            freqs,
            weights,
            phases: Vec::new(),
        }
    }

    /// Replaces weights and phases by `χ(p) p^{-σ}` where `coefficient(p) = χ(p)`.
    pub fn twisted<F>(primes: &PrimeTable, sigma: f64, coefficient: F) -> Self
    where
        F: Fn(u64) -> ComplexValue,
    {
        let mut series = PrimeSeries::new(primes, sigma);
        let mut phases = Vec::with_capacity(series.primes.len());
        for (i, &p) in series.primes.iter().enumerate() {
            let c = coefficient(p);
            let modulus = c.norm();
            series.weights[i] *= modulus;
            phases.push(if modulus > 0.0 { c.arg() / TAU } else { 0.0 });
        }
        series.phases = phases;
        series
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    fn angle(&self, i: usize, tau: f64) -> f64 {
        let base = -tau * self.freqs[i];
        if self.phases.is_empty() {
            base
        } else {
            base + self.phases[i]
        }
    }

    /// Single summand `a_p e^{i(θ_p - τ log p)}`.
    #[inline]
    pub fn term(&self, i: usize, tau: f64) -> ComplexValue {
        let (c, s) = cos_sin_turns(self.angle(i, tau));
        ComplexValue::new(self.weights[i] * c, self.weights[i] * s)
    }

    /// `X(τ)`, summed pairwise in ascending prime order.
    pub fn eval(&self, tau: f64) -> ComplexValue {
        pairwise_sum_by(self.len(), &|i| self.term(i, tau))
    }

    /// `Re X(τ)` only.
    pub fn eval_re(&self, tau: f64) -> f64 {
        pairwise_sum_by(self.len(), &|i| {
            self.weights[i] * cos_turns(self.angle(i, tau))
        })
    }

    /// `Σ a_p^2 cos(Δ log p)`: the covariance function `2R(Δ)` of the series.
    pub fn covariance(&self, delta: f64) -> f64 {
        pairwise_sum_by(self.len(), &|i| {
            self.weights[i] * self.weights[i] * cos_turns(delta * self.freqs[i])
        })
    }

    /// Summands at `τ`, split into real and imaginary parts.
    pub fn fill_terms(&self, tau: f64, re: &mut [f64], im: &mut [f64]) {
        for i in 0..self.len() {
            let (c, s) = cos_sin_turns(self.angle(i, tau));
            re[i] = self.weights[i] * c;
            im[i] = self.weights[i] * s;
        }
    }

    /// Per-term rotation `e^{-iΔ log p}` taking the summands at `τ` to `τ + Δ`.
    pub fn rotation(&self, delta: f64) -> (Vec<f64>, Vec<f64>) {
        self.freqs
            .iter()
            .map(|&f| {
                let (c, s) = cos_sin_turns(-delta * f);
                (c, s)
            })
            .unzip()
    }

    /// `Re X(τ)` with four interleaved accumulators; faster than
    /// [`PrimeSeries::eval_re`] and equally reproducible, at the price of
    /// `O(ε n)` rather than `O(ε log n)` rounding growth.
    pub fn eval_re_lanes(&self, tau: f64) -> f64 {
        let mut acc = [0.0f64; 4];
        let n = self.len();
        let body = n - n % 4;
        if self.phases.is_empty() {
            for i in (0..body).step_by(4) {
                for l in 0..4 {
                    acc[l] += self.weights[i + l] * cos_turns(-tau * self.freqs[i + l]);
                }
            }
        } else {
            for i in (0..body).step_by(4) {
                for l in 0..4 {
                    acc[l] += self.weights[i + l] * cos_turns(self.angle(i + l, tau));
                }
            }
        }
        let mut tail = 0.0;
        for i in body..n {
            tail += self.weights[i] * cos_turns(self.angle(i, tau));
        }
        (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
    }

    /// `Σ a_p^k`.
    pub fn weight_power_sum(&self, k: i32) -> f64 {
        pairwise_sum_by(self.len(), &|i| self.weights[i].powi(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve_primes;

    #[test]
    fn single_prime_term_has_modulus_two_to_minus_sigma() {
        let t = PrimeTable::from_primes(vec![2]).unwrap();
        let s = PrimeSeries::new(&t, 0.5);
        for tau in [0.0, 1.0, 1234.5, 1e7 + 0.3] {
            assert!((s.eval(tau).norm() - 2f64.powf(-0.5)).abs() < 1e-15);
        }
    }

    #[test]
    fn eval_matches_direct_powers() {
        let t = sieve_primes(1000).unwrap();
        let s = PrimeSeries::new(&t, 0.5);
        let tau = 37.25;
        let direct: ComplexValue = t
            .primes()
            .iter()
            .map(|&p| ComplexValue::new(p as f64, 0.0).powc(ComplexValue::new(-0.5, -tau)))
            .sum();
        assert!((s.eval(tau) - direct).norm() < 1e-11);
        assert!((s.eval_re(tau) - direct.re).abs() < 1e-11);
    }

    #[test]
    fn lane_and_pairwise_sums_agree() {
        let t = sieve_primes(100_000).unwrap();
        let s = PrimeSeries::new(&t, 0.5);
        for tau in [3.0, 1.0e7 + 0.123, 1.9e7] {
            assert!((s.eval_re(tau) - s.eval_re_lanes(tau)).abs() < 1e-10);
        }
    }

    #[test]
    fn rotation_shifts_tau() {
        let t = sieve_primes(1000).unwrap();
        let s = PrimeSeries::new(&t, 0.5);
        let (cr, ci) = s.rotation(2.5);
        let mut re = vec![0.0; s.len()];
        let mut im = vec![0.0; s.len()];
        s.fill_terms(100.0, &mut re, &mut im);
        let shifted: ComplexValue = (0..s.len())
            .map(|i| ComplexValue::new(re[i], im[i]) * ComplexValue::new(cr[i], ci[i]))
            .sum();
        assert!((shifted - s.eval(102.5)).norm() < 1e-12);
    }

    #[test]
    fn twisted_zeroes_and_rotates() {
        let t = sieve_primes(7).unwrap();
        let s = PrimeSeries::twisted(&t, 1.0, |p| match p % 4 {
            1 => ComplexValue::new(1.0, 0.0),
            3 => ComplexValue::new(-1.0, 0.0),
            _ => ComplexValue::new(0.0, 0.0),
        });
        let v = s.eval(0.0);
        assert!((v.re - (-1.0 / 3.0 + 1.0 / 5.0 - 1.0 / 7.0)).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }
}
