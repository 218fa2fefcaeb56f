//! Conditional Gaussian for `Re P(1/2+i(τ+Δ))` given `ζ(1/2+iτ) = 0`.
//!
//! The limiting law has mean `-Re P(1+iΔ)` (equivalently
//! `-log|ζ(1+iΔ)| + ε(Δ)` with `|ε| < 1-γ`) and variance `½ log log τ`. The
//! probability that the conditioned value falls below `-k·σ` dips wherever
//! `Re P(1+iΔ)` has a trough, i.e. near zero ordinates.

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::par;
use crate::prime_zeta::prime_zeta_full;
use crate::zeta::EvalAccuracy;
use crate::ComplexValue;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionalGaussian {
    pub mean: f64,
    pub variance: f64,
}

impl ConditionalGaussian {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    /// `P(X ≤ x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        normal_cdf((x - self.mean) / self.std_dev())
    }
}

/// `½ log log τ`, requiring `τ > e`.
pub fn conditional_variance(tau: f64) -> Result<f64> {
    if !(tau > std::f64::consts::E) || !tau.is_finite() {
        return Err(Error::domain(format!(
            "τ must exceed e for a positive variance, got {tau}"
        )));
    }
    Ok(0.5 * tau.ln().ln())
}

pub fn conditional_at_zero(delta: f64, tau: f64, acc: EvalAccuracy) -> Result<ConditionalGaussian> {
    if !(delta > 0.0) {
        return Err(Error::domain(format!("Δ must be positive, got {delta}")));
    }
    let variance = conditional_variance(tau)?;
    let p = prime_zeta_full(ComplexValue::new(1.0, delta), acc)?;
    Ok(ConditionalGaussian {
        mean: -p.re,
        variance,
    })
}

/// Standard normal CDF, `Φ(x) = ½ erfc(-x/√2)`.
///
/// `erfc` is the musl/FreeBSD implementation (via `libm`): rational
/// approximations on `|x| < 0.84375`, `< 1.25`, and an `exp(-x²)`-scaled
/// rational form beyond, accurate to about one ulp. Using `erfc` rather than
/// `1 + erf` keeps relative accuracy in the lower tail.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// How `σ` in the `-k·σ` threshold is derived from `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SigmaConvention {
    /// `σ = √(½ log log τ)`, the conditional standard deviation.
    #[default]
    Std,
    /// `σ = ½ log log τ`, the variance used as the scale.
    Variance,
}

impl SigmaConvention {
    pub fn scale(self, tau: f64) -> Result<f64> {
        let v = conditional_variance(tau)?;
        Ok(match self {
            SigmaConvention::Std => v.sqrt(),
            SigmaConvention::Variance => v,
        })
    }
}

/// `P{Re P(1/2+i(τ+Δ)) ≤ -k·σ | ζ(1/2+iτ) = 0}` over a grid of positive Δ.
pub fn extreme_prob_curve(
    deltas: &[f64],
    tau: f64,
    threshold_sigmas: f64,
    convention: SigmaConvention,
    acc: EvalAccuracy,
) -> Result<Curve> {
    if let Some(d) = deltas.iter().find(|&&d| !(d > 0.0)) {
        return Err(Error::domain(format!("Δ must be positive, got {d}")));
    }
    let threshold = -threshold_sigmas * convention.scale(tau)?;
    let values = par::map_slice(deltas, |&d| {
        conditional_at_zero(d, tau, acc).map(|g| g.cdf(threshold))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Curve::new(deltas.to_vec(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::log_abs_zeta_1line;

    /// Maclaurin series of erf, summed to convergence.
    fn erf_series(z: f64) -> f64 {
        let mut term = z;
        let mut sum = z;
        let mut n = 0.0;
        while term.abs() > 1e-18 * sum.abs() {
            n += 1.0;
            term *= -z * z / n;
            sum += term / (2.0 * n + 1.0);
        }
        2.0 / std::f64::consts::PI.sqrt() * sum
    }

    #[test]
    fn cdf_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        let oracle = 0.5 * (1.0 - erf_series(3.0 / std::f64::consts::SQRT_2));
        assert!((normal_cdf(-3.0) - oracle).abs() < 1e-12);
        assert!((normal_cdf(-3.0) - 0.001349898).abs() < 1e-9);
        for x in [-2.5, -1.0, -0.3, 0.7, 1.96] {
            let oracle = 0.5 * (1.0 + erf_series(x / std::f64::consts::SQRT_2));
            assert!((normal_cdf(x) - oracle).abs() < 1e-12, "x = {x}");
            assert!((normal_cdf(x) + normal_cdf(-x) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn variance_at_exp_e() {
        let tau = std::f64::consts::E.exp();
        let g = conditional_at_zero(3.0, tau, EvalAccuracy::default()).unwrap();
        assert!((g.variance - 0.5).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        let acc = EvalAccuracy::default();
        assert!(conditional_at_zero(0.0, 100.0, acc).is_err());
        assert!(conditional_at_zero(-1.0, 100.0, acc).is_err());
        assert!(conditional_at_zero(1.0, 2.0, acc).is_err());
        assert!(extreme_prob_curve(&[0.0, 1.0], 100.0, 3.0, SigmaConvention::Std, acc).is_err());
    }

    #[test]
    fn mean_at_first_ordinate_is_positive_and_near_minus_log_zeta() {
        let acc = EvalAccuracy::default();
        let g = conditional_at_zero(14.134725, 1e5, acc).unwrap();
        assert!(g.mean > 0.0);
        for d in [0.5, 3.0, 14.134725, 40.0, 99.0] {
            let g = conditional_at_zero(d, 1e5, acc).unwrap();
            let lz = log_abs_zeta_1line(d, acc).unwrap();
            assert!((g.mean + lz).abs() < 0.422784);
        }
    }

    #[test]
    fn probability_decreases_with_mean() {
        let lo = ConditionalGaussian {
            mean: -1.0,
            variance: 1.2,
        };
        let hi = ConditionalGaussian {
            mean: 0.5,
            variance: 1.2,
        };
        assert!(hi.cdf(-3.0) < lo.cdf(-3.0));
    }
}
