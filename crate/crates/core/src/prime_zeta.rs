//! Truncated and full prime zeta functions.
//!
//! `P_t(s) = Σ_{p≤t} p^{-s}` is summed directly. The full `P(s)` on `Re(s) ≥ 1`
//! comes from Möbius inversion of the logarithm of the Euler product,
//!
//! ```text
//! P(s) = Σ_{n≥1} μ(n)/n · log ζ(ns),
//! ```
//!
//! truncated once `(ζ(n·Re s) - 1)/n`, a bound on the n-th term, drops below a
//! tenth of the tolerance.

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::par;
use crate::primes::PrimeTable;
use crate::series::PrimeSeries;
use crate::zeta::{log_zeta, zeta_real, EvalAccuracy};
use crate::ComplexValue;

/// Hard cap on the Möbius series length.
pub const MOBIUS_SERIES_CAP: u64 = 64;

/// `Σ_{p ≤ t} p^{-s}`.
pub fn truncated_prime_zeta(primes: &PrimeTable, s: ComplexValue) -> ComplexValue {
    PrimeSeries::new(primes, s.re).eval(s.im)
}

/// Möbius function μ(n).
pub fn mobius(n: u64) -> Result<i8> {
    if n < 1 {
        return Err(Error::domain("μ(n) is defined for n >= 1"));
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return Ok(0);
            }
            sign = -sign;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// `P(s)` for `Re(s) ≥ 1`, `s ≠ 1`.
pub fn prime_zeta_full(s: ComplexValue, acc: EvalAccuracy) -> Result<ComplexValue> {
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Singularity(
            "P(s) diverges at s = 1 together with log ζ(s)".into(),
        ));
    }
    if !(s.re >= 1.0) {
        return Err(Error::domain(format!(
            "Re(s) = {} < 1 is outside the supported half-plane",
            s.re
        )));
    }
    let mut total = log_zeta(s, acc)?;
    for n in 2..=MOBIUS_SERIES_CAP {
        let bound = (zeta_real(n as f64 * s.re, acc)? - 1.0) / n as f64;
        if bound < acc.abs_tol / 10.0 {
            break;
        }
        let mu = mobius(n)?;
        if mu == 0 {
            continue;
        }
        let term = log_zeta(s * n as f64, acc)? / n as f64;
        total += term * mu as f64;
    }
    Ok(total)
}

/// `Re P(1+iΔ) - log|ζ(1+iΔ)| = Re Σ_{n≥2} μ(n)/n log ζ(n + inΔ)`.
///
/// Evaluated from the n ≥ 2 terms alone so no cancellation against the
/// dominant `log ζ` term occurs near zeros of the 1-line curve.
pub fn one_line_error(delta: f64, acc: EvalAccuracy) -> Result<f64> {
    if delta.abs() <= crate::zeta::POLE_EXCLUSION {
        return Err(Error::Singularity(format!("Δ = {delta} is at the pole")));
    }
    let s = ComplexValue::new(1.0, delta);
    let mut total = 0.0;
    for n in 2..=MOBIUS_SERIES_CAP {
        let bound = (zeta_real(n as f64, acc)? - 1.0) / n as f64;
        if bound < acc.abs_tol / 10.0 {
            break;
        }
        let mu = mobius(n)?;
        if mu != 0 {
            total += mu as f64 * log_zeta(s * n as f64, acc)?.re / n as f64;
        }
    }
    Ok(total)
}

/// `2R_t(Δ) = Re P_t(1+iΔ) = Σ_{p≤t} cos(Δ log p)/p` on a grid.
pub fn covariance_curve(primes: &PrimeTable, deltas: &[f64]) -> Result<Curve> {
    if let Some(d) = deltas.iter().find(|d| !d.is_finite()) {
        return Err(Error::domain(format!("grid value {d} is not finite")));
    }
    let series = PrimeSeries::new(primes, 0.5);
    let values = par::map_slice(deltas, |&d| series.covariance(d));
    Curve::new(deltas.to_vec(), values)
}

/// `Re P(1+iΔ)` on a grid (each Δ must avoid the pole).
pub fn prime_zeta_1line_curve(deltas: &[f64], acc: EvalAccuracy) -> Result<Curve> {
    let values = par::map_slice(deltas, |&d| {
        if d.abs() <= crate::zeta::POLE_EXCLUSION {
            return Err(Error::Singularity(format!("Δ = {d} is at the pole")));
        }
        prime_zeta_full(ComplexValue::new(1.0, d), acc).map(|v| v.re)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Curve::new(deltas.to_vec(), values)
}

/// `log|ζ(1+iΔ)|` on a grid.
pub fn log_abs_zeta_curve(deltas: &[f64], acc: EvalAccuracy) -> Result<Curve> {
    let values = par::map_slice(deltas, |&d| crate::zeta::log_abs_zeta_1line(d, acc))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Curve::new(deltas.to_vec(), values)
}

/// Mean squared truncation error `(P(2) - P_t(2)) / 2`.
pub fn truncation_mse(primes: &PrimeTable, acc: EvalAccuracy) -> Result<f64> {
    if primes.is_empty() {
        return Err(Error::domain("prime table is empty"));
    }
    let full = prime_zeta_full(ComplexValue::new(2.0, 0.0), acc)?.re;
    let partial = truncated_prime_zeta(primes, ComplexValue::new(2.0, 0.0)).re;
    Ok((full - partial) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve_primes;
    use crate::zeta::log_abs_zeta_1line;

    fn acc() -> EvalAccuracy {
        EvalAccuracy::default()
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1).unwrap(), e, "n = {}", i + 1);
        }
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn truncated_small_cases() {
        let two = PrimeTable::from_primes(vec![2]).unwrap();
        let v = truncated_prime_zeta(&two, ComplexValue::new(0.5, 0.0));
        assert!((v.re - 0.5f64.sqrt()).abs() < 1e-15);
        let ten = sieve_primes(10).unwrap();
        let v = truncated_prime_zeta(&ten, ComplexValue::new(1.0, 0.0));
        let expected = 1.0 / 2.0 + 1.0 / 3.0 + 1.0 / 5.0 + 1.0 / 7.0;
        assert!((v.re - expected).abs() < 1e-15);
        assert!((v.re - 1.1761905).abs() < 1e-7);
    }

    #[test]
    fn truncated_conjugate_symmetry() {
        let t = sieve_primes(5000).unwrap();
        let s = ComplexValue::new(0.5, 123.4);
        let a = truncated_prime_zeta(&t, s);
        let b = truncated_prime_zeta(&t, s.conj());
        assert!((a.conj() - b).norm() < 1e-12);
    }

    #[test]
    fn full_at_two() {
        let p2 = prime_zeta_full(ComplexValue::new(2.0, 0.0), acc()).unwrap();
        assert!((p2.re - 0.452_247_420_041_065_5).abs() < 1e-10, "{}", p2.re);
        assert!(p2.im.abs() < 1e-14);
    }

    #[test]
    fn full_errors() {
        assert!(matches!(
            prime_zeta_full(ComplexValue::new(1.0, 0.0), acc()),
            Err(Error::Singularity(_))
        ));
        assert!(matches!(
            prime_zeta_full(ComplexValue::new(0.5, 14.0), acc()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn full_matches_direct_sum_for_real_sigma() {
        let t = sieve_primes(1_000_000).unwrap();
        for sigma in [1.5f64, 2.0, 3.0] {
            let full = prime_zeta_full(ComplexValue::new(sigma, 0.0), acc())
                .unwrap()
                .re;
            let direct = truncated_prime_zeta(&t, ComplexValue::new(sigma, 0.0)).re;
            // Σ_{p>x} p^{-σ} ≤ ∫_x^∞ u^{-σ} du / log x · (1 + small) for x = 10^6
            let x = 1e6f64;
            let tail = 1.3 * x.powf(1.0 - sigma) / ((sigma - 1.0) * x.ln());
            let diff = full - direct;
            assert!(
                diff >= -1e-6 && diff <= tail + 1e-6,
                "σ = {sigma}: {diff} vs {tail}"
            );
        }
    }

    #[test]
    fn one_line_error_bound_on_coarse_grid() {
        for k in 1..=20 {
            let d = 5.0 * k as f64;
            let full = prime_zeta_full(ComplexValue::new(1.0, d), acc())
                .unwrap()
                .re;
            let lz = log_abs_zeta_1line(d, acc()).unwrap();
            let err = one_line_error(d, acc()).unwrap();
            assert!((full - lz).abs() < 0.422784, "Δ = {d}");
            assert!((full - lz - err).abs() < 1e-9);
        }
    }

    #[test]
    fn covariance_curve_basics() {
        let t = sieve_primes(10_000).unwrap();
        let p1 = truncated_prime_zeta(&t, ComplexValue::new(1.0, 0.0)).re;
        let c = covariance_curve(&t, &[-3.0, 0.0, 3.0, 14.0]).unwrap();
        assert!((c.values()[1] - p1).abs() < 1e-12);
        assert!((c.values()[0] - c.values()[2]).abs() < 1e-12);
        assert!(c.values().iter().all(|&v| v <= p1 + 1e-12));
        let direct = truncated_prime_zeta(&t, ComplexValue::new(1.0, 14.0)).re;
        assert!((c.values()[3] - direct).abs() < 1e-12);
    }

    #[test]
    fn mse_decreases() {
        let base = sieve_primes(100_000).unwrap();
        let mut last = f64::INFINITY;
        for t in [10u64, 100, 1000, 10_000, 100_000] {
            let v = truncation_mse(&base.truncated(t), acc()).unwrap();
            assert!(v > 0.0 && v < last, "t = {t}");
            last = v;
        }
        assert!(truncation_mse(&base.truncated(100), acc()).unwrap() < 0.002);
        assert!(truncation_mse(&base.truncated(1000), acc()).unwrap() < 0.0002);
    }
}
