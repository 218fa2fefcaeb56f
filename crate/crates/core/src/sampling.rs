//! Monte Carlo sampling of `X(τ) = Σ_p a_p e^{i(θ_p - τ log p)}` at random heights.
//!
//! Heights are `τ_k = T(1 + u_k)` with `u_k` uniform on `[0, 1)`. Sample `k`
//! draws `u_k` from its own ChaCha8 stream: the generator is seeded with
//! `seed` and switched to stream number `k`, so every sample is independent
//! of how the work is split across threads.
//!
//! Covariances are estimated with paired draws (`τ_k` and `τ_k + Δ` share one
//! `u_k`) as plain means of products, since `E X = 0`.

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::primes::PrimeTable;
use crate::series::PrimeSeries;
use crate::sum::pairwise_sum;
use crate::verify::Gate;
use crate::ComplexValue;

pub const MIN_NORMALITY_SAMPLES: usize = 100;

/// Default height `T` for moment checks at `t ≤ 10^6`; well above `t²`.
pub const NORMALITY_HEIGHT: f64 = 1e13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    /// τ is drawn uniformly from `[T, 2T]`.
    pub height_t: f64,
    pub n_samples: usize,
    pub seed: u64,
    /// Real part of `s`.
    pub sigma: f64,
}

impl SampleConfig {
    pub fn new(height_t: f64, n_samples: usize, seed: u64) -> Result<Self> {
        let cfg = SampleConfig {
            height_t,
            n_samples,
            seed,
            sigma: 0.5,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.height_t > 0.0) || !self.height_t.is_finite() {
            return Err(Error::domain(format!(
                "height T must be > 0, got {}",
                self.height_t
            )));
        }
        if self.n_samples < 1 {
            return Err(Error::domain("n_samples must be >= 1"));
        }
        if !self.sigma.is_finite() {
            return Err(Error::domain("sigma must be finite"));
        }
        Ok(())
    }

    /// Height of sample `index`.
    pub fn tau(&self, index: usize) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        self.height_t * (1.0 + u)
    }

    pub fn taus(&self) -> Vec<f64> {
        par::map_indices(self.n_samples, |k| self.tau(k))
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            height_t: 1e7,
            n_samples: 100_000,
            seed: 0x5eed,
            sigma: 0.5,
        }
    }
}

/// A Monte Carlo mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

impl Estimate {
    /// Sample mean and `sd/√n` of `xs`.
    pub fn from_samples(xs: &[f64]) -> Estimate {
        let n = xs.len() as f64;
        let mean = pairwise_sum(xs) / n;
        let centered: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
        let var = pairwise_sum(&centered) / (n - 1.0).max(1.0);
        Estimate {
            value: mean,
            stderr: (var / n).sqrt(),
        }
    }

    /// `|value - target| ≤ k · stderr`.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= k * self.stderr
    }
}

/// `n_samples` evaluations of `P_t(σ + iτ_k)`.
pub fn sample_series(primes: &PrimeTable, cfg: &SampleConfig) -> Result<Vec<ComplexValue>> {
    cfg.validate()?;
    let series = PrimeSeries::new(primes, cfg.sigma);
    Ok(par::map_indices(cfg.n_samples, |k| series.eval(cfg.tau(k))))
}

/// Lag-Δ covariance estimates of the real and imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovarianceEstimate {
    pub delta: f64,
    pub re: Estimate,
    pub im: Estimate,
}

fn lane_sum(xs: &[f64]) -> f64 {
    let mut acc = [0.0f64; 4];
    let mut chunks = xs.chunks_exact(4);
    for c in &mut chunks {
        for l in 0..4 {
            acc[l] += c[l];
        }
    }
    let tail: f64 = chunks.remainder().iter().sum();
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

fn rotated_sum(re: &[f64], im: &[f64], cr: &[f64], ci: &[f64]) -> (f64, f64) {
    let mut ar = [0.0f64; 4];
    let mut ai = [0.0f64; 4];
    let n = re.len();
    let body = n - n % 4;
    for i in (0..body).step_by(4) {
        for l in 0..4 {
            let j = i + l;
            ar[l] += re[j] * cr[j] - im[j] * ci[j];
            ai[l] += re[j] * ci[j] + im[j] * cr[j];
        }
    }
    let (mut tr, mut ti) = (0.0, 0.0);
    for j in body..n {
        tr += re[j] * cr[j] - im[j] * ci[j];
        ti += re[j] * ci[j] + im[j] * cr[j];
    }
    (
        (ar[0] + ar[1]) + (ar[2] + ar[3]) + tr,
        (ai[0] + ai[1]) + (ai[2] + ai[3]) + ti,
    )
}

/// Paired-sample covariance estimates `mean_k Re X(τ_k+Δ) Re X(τ_k)` (and the
/// same for imaginary parts) for every Δ in `deltas`, sharing one set of draws.
pub fn covariance_profile(
    series: &PrimeSeries,
    cfg: &SampleConfig,
    deltas: &[f64],
) -> Result<Vec<CovarianceEstimate>> {
    cfg.validate()?;
    let rotations: Vec<(Vec<f64>, Vec<f64>)> = deltas.iter().map(|&d| series.rotation(d)).collect();
    let m = deltas.len();
    let rows: Vec<Vec<f64>> = par::map_indices(cfg.n_samples, |k| {
        let tau = cfg.tau(k);
        let mut re = vec![0.0; series.len()];
        let mut im = vec![0.0; series.len()];
        series.fill_terms(tau, &mut re, &mut im);
        let (x_re, x_im) = (lane_sum(&re), lane_sum(&im));
        let mut row = Vec::with_capacity(2 * m);
        for (cr, ci) in &rotations {
            let (y_re, y_im) = rotated_sum(&re, &im, cr, ci);
            row.push(y_re * x_re);
            row.push(y_im * x_im);
        }
        row
    });
    let column = |c: usize| -> Vec<f64> { rows.iter().map(|r| r[c]).collect() };
    Ok(deltas
        .iter()
        .enumerate()
        .map(|(j, &delta)| CovarianceEstimate {
            delta,
            re: Estimate::from_samples(&column(2 * j)),
            im: Estimate::from_samples(&column(2 * j + 1)),
        })
        .collect())
}

/// `mean_k Re P_t(σ+i(τ_k+Δ)) · Re P_t(σ+iτ_k)`; for σ = 1/2 its expectation
/// is `½ Re P_t(1+iΔ)`.
pub fn empirical_covariance(
    primes: &PrimeTable,
    cfg: &SampleConfig,
    delta: f64,
) -> Result<Estimate> {
    let series = PrimeSeries::new(primes, cfg.sigma);
    Ok(covariance_profile(&series, cfg, &[delta])?[0].re)
}

/// Covariance of the single summands `p^{-σ} cos(τ log p)` and
/// `q^{-σ} cos(τ log q)` (real parts) and of their sine counterparts.
pub fn summand_cross_covariance(
    p: u64,
    q: u64,
    cfg: &SampleConfig,
) -> Result<(Estimate, Estimate)> {
    cfg.validate()?;
    let table = PrimeTable::from_primes(if p < q { vec![p, q] } else { vec![q, p] })?;
    let series = PrimeSeries::new(&table, cfg.sigma);
    let rows: Vec<(f64, f64)> = par::map_indices(cfg.n_samples, |k| {
        let tau = cfg.tau(k);
        let a = series.term(0, tau);
        let b = series.term(1, tau);
        (a.re * b.re, a.im * b.im)
    });
    let (re, im): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
    Ok((Estimate::from_samples(&re), Estimate::from_samples(&im)))
}

/// Sample moments with delta-method standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub n: usize,
    pub mean_stderr: f64,
    pub variance_stderr: f64,
    pub skewness_stderr: f64,
    pub kurtosis_stderr: f64,
}

impl MomentSummary {
    pub fn from_samples(xs: &[f64]) -> Result<MomentSummary> {
        if xs.len() < 2 {
            return Err(Error::InsufficientSamples {
                needed: 2,
                got: xs.len(),
            });
        }
        let nf = xs.len() as f64;
        let mean = pairwise_sum(xs) / nf;
        let d: Vec<f64> = xs.iter().map(|x| x - mean).collect();
        let moment = |k: i32| pairwise_sum(&d.iter().map(|v| v.powi(k)).collect::<Vec<_>>()) / nf;
        let (m2, m3, m4) = (moment(2), moment(3), moment(4));
        let skew = m3 / m2.powf(1.5);
        let kurt = m4 / (m2 * m2) - 3.0;

        // influence functions of each statistic, evaluated per sample
        let sd_of = |f: &dyn Fn(f64) -> f64| {
            Estimate::from_samples(&d.iter().map(|&v| f(v)).collect::<Vec<_>>()).stderr
        };
        let variance_stderr = sd_of(&|v| v * v);
        let skewness_stderr = sd_of(&|v| {
            ((v * v * v - m3) - 3.0 * m2 * v) / m2.powf(1.5) - 1.5 * skew * (v * v - m2) / m2
        });
        let kurtosis_stderr = sd_of(&|v| {
            ((v.powi(4) - m4) - 4.0 * m3 * v) / (m2 * m2)
                - 2.0 * (m4 / (m2 * m2)) * (v * v - m2) / m2
        });
        Ok(MomentSummary {
            mean,
            variance: m2 * nf / (nf - 1.0),
            skewness: skew,
            excess_kurtosis: kurt,
            n: xs.len(),
            mean_stderr: (m2 / nf).sqrt(),
            variance_stderr,
            skewness_stderr,
            kurtosis_stderr,
        })
    }
}

/// Moments of `Re P_t(1/2+iτ) / √(½ P_t(1))`.
pub fn normality_summary(primes: &PrimeTable, cfg: &SampleConfig) -> Result<MomentSummary> {
    cfg.validate()?;
    if cfg.sigma != 0.5 {
        return Err(Error::domain(
            "normality summary is defined on the critical line σ = 1/2",
        ));
    }
    if cfg.n_samples < MIN_NORMALITY_SAMPLES {
        return Err(Error::InsufficientSamples {
            needed: MIN_NORMALITY_SAMPLES,
            got: cfg.n_samples,
        });
    }
    let series = PrimeSeries::new(primes, 0.5);
    let scale = (0.5 * series.weight_power_sum(2)).sqrt();
    let xs = par::map_indices(cfg.n_samples, |k| series.eval_re_lanes(cfg.tau(k)) / scale);
    MomentSummary::from_samples(&xs)
}

/// Fourth-moment Lyapunov quantity `(3/8) P_t(2) / (½ P_t(1))²`.
pub fn lyapunov_ratio(primes: &PrimeTable) -> Result<f64> {
    if primes.limit() < 10 {
        return Err(Error::domain(
            "Lyapunov ratio needs a prime table with t >= 10",
        ));
    }
    let series = PrimeSeries::new(primes, 0.5);
    let half_var = 0.5 * series.weight_power_sum(2);
    Ok(0.375 * series.weight_power_sum(4) / (half_var * half_var))
}

/// Excess kurtosis of `Re P_t(1/2+iτ)` for independent summands:
/// fourth cumulant `-(3/8) Σ p^{-2}` over variance squared.
pub fn predicted_excess_kurtosis(primes: &PrimeTable) -> Result<f64> {
    Ok(-lyapunov_ratio(primes)?)
}

/// JSON-serializable record of a sampling run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingReport {
    pub config: SampleConfig,
    pub prime_limit: u64,
    pub moments: MomentSummary,
    pub gates: Vec<Gate>,
}

/// Normality gates for one configuration: normalized variance near 1 and
/// skewness near 0 (4 standard errors), excess kurtosis near the cumulant
/// prediction (3 standard errors).
pub fn normality_report(primes: &PrimeTable, cfg: &SampleConfig) -> Result<SamplingReport> {
    let moments = normality_summary(primes, cfg)?;
    let kurt = predicted_excess_kurtosis(primes)?;
    let gates = vec![
        Gate::statistical(
            "normalized variance",
            1.0,
            moments.variance,
            moments.variance_stderr,
            4.0,
        ),
        Gate::statistical(
            "skewness",
            0.0,
            moments.skewness,
            moments.skewness_stderr,
            4.0,
        ),
        Gate::statistical(
            "excess kurtosis",
            kurt,
            moments.excess_kurtosis,
            moments.kurtosis_stderr,
            3.0,
        ),
    ];
    Ok(SamplingReport {
        config: *cfg,
        prime_limit: primes.limit(),
        moments,
        gates,
    })
}
