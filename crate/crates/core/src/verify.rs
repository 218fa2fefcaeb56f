//! Pass/fail gates over the library's quantitative claims, and the JSON
//! report that collects them.

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characters::{
    character_error_bound, character_truncation_mse, reference_characters, DirichletCharacter,
};
use crate::curve::{grid, Curve};
use crate::error::Result;
use crate::prime_zeta::{
    covariance_curve, log_abs_zeta_curve, prime_zeta_full, truncated_prime_zeta, truncation_mse,
};
use crate::primes::{first_n_primes, sieve_primes, PrimeTable};
use crate::repulsion::{extreme_prob_curve, SigmaConvention};
use crate::sampling::{
    covariance_profile, lyapunov_ratio, normality_report, summand_cross_covariance, SampleConfig,
    NORMALITY_HEIGHT,
};
use crate::series::PrimeSeries;
use crate::zeros::{diff_histogram, trough_score, ZeroTable};
use crate::zeta::{euler_gamma_residual, log_abs_zeta_1line, EvalAccuracy, EULER_GAMMA};
use crate::ComplexValue;

/// `1 - γ` rounded as quoted for the ε(Δ) bound.
pub const ONE_LINE_ERROR_BOUND: f64 = 0.422784;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateKind {
    /// `estimate < threshold`
    UpperBound,
    /// `|estimate - target| ≤ threshold`
    Tolerance,
    /// `|estimate - target| ≤ threshold · stderr`
    Statistical,
    /// `estimate ≥ threshold`
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub name: String,
    pub kind: GateKind,
    pub target: f64,
    pub estimate: f64,
    pub stderr: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
}

impl Gate {
    fn evaluate(mut self) -> Self {
        let diff = (self.estimate - self.target).abs();
        self.pass = match self.kind {
            GateKind::UpperBound => self.estimate < self.threshold,
            GateKind::Tolerance => diff <= self.threshold,
            GateKind::Statistical => diff <= self.threshold * self.stderr.unwrap_or(0.0),
            GateKind::AtLeast => self.estimate >= self.threshold,
        } && self.estimate.is_finite();
        self
    }

    pub fn upper_bound(name: impl Into<String>, estimate: f64, bound: f64) -> Gate {
        Gate {
            name: name.into(),
            kind: GateKind::UpperBound,
            target: bound,
            estimate,
            stderr: None,
            threshold: bound,
            pass: false,
        }
        .evaluate()
    }

    pub fn tolerance(name: impl Into<String>, target: f64, estimate: f64, tol: f64) -> Gate {
        Gate {
            name: name.into(),
            kind: GateKind::Tolerance,
            target,
            estimate,
            stderr: None,
            threshold: tol,
            pass: false,
        }
        .evaluate()
    }

    pub fn statistical(
        name: impl Into<String>,
        target: f64,
        estimate: f64,
        stderr: f64,
        k: f64,
    ) -> Gate {
        Gate {
            name: name.into(),
            kind: GateKind::Statistical,
            target,
            estimate,
            stderr: Some(stderr),
            threshold: k,
            pass: false,
        }
        .evaluate()
    }

    pub fn at_least(name: impl Into<String>, estimate: f64, minimum: f64) -> Gate {
        Gate {
            name: name.into(),
            kind: GateKind::AtLeast,
            target: minimum,
            estimate,
            stderr: None,
            threshold: minimum,
            pass: false,
        }
        .evaluate()
    }

    /// Re-evaluate with every tolerance multiplied by `scale` (bounds for
    /// upper-bound gates, minimum counts divided by it).
    pub fn scaled(mut self, scale: f64) -> Gate {
        match self.kind {
            GateKind::AtLeast => {
                self.threshold = if scale > 0.0 {
                    self.threshold / scale
                } else {
                    f64::INFINITY
                }
            }
            _ => self.threshold *= scale,
        }
        self.evaluate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// Deterministic gates only.
    Fast,
    /// Adds the Monte Carlo gates and the large-t covariance curve.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub level: Level,
    pub seed: u64,
    /// Multiplies every tolerance; 1 in normal use.
    pub tolerance_scale: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            level: Level::Fast,
            seed: 0x5eed,
            tolerance_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub level: Level,
    pub seed: u64,
    pub zeros_loaded: Option<usize>,
    pub gates: Vec<Gate>,
    pub pass: bool,
}

fn acc() -> EvalAccuracy {
    EvalAccuracy::default()
}

/// Mean squared truncation error at t = 100 and t = 1000.
pub fn truncation_gates() -> Result<Vec<Gate>> {
    let table = sieve_primes(1000)?;
    Ok(vec![
        Gate::upper_bound(
            "truncation mse t=100",
            truncation_mse(&table.truncated(100), acc())?,
            0.002,
        ),
        Gate::upper_bound(
            "truncation mse t=1000",
            truncation_mse(&table, acc())?,
            0.0002,
        ),
    ])
}

pub fn gamma_gate() -> Gate {
    Gate::tolerance(
        "sum (zeta(n)-1)/n = 1-gamma",
        1.0 - EULER_GAMMA,
        euler_gamma_residual(),
        1e-8,
    )
}

/// `max |Re P(1+iΔ) - log|ζ(1+iΔ)||` over `[0.5, 100]`, step 0.05.
pub fn one_line_error_gate() -> Result<Gate> {
    let deltas = grid(0.5, 100.0, 0.05)?;
    let diffs = crate::par::map_slice(&deltas, |&d| -> Result<f64> {
        let p = prime_zeta_full(ComplexValue::new(1.0, d), acc())?.re;
        Ok((p - log_abs_zeta_1line(d, acc())?).abs())
    });
    let mut sup = 0.0f64;
    for d in diffs {
        sup = sup.max(d?);
    }
    Ok(Gate::upper_bound(
        "sup |Re P(1+iD) - log|zeta(1+iD)||",
        sup,
        ONE_LINE_ERROR_BOUND,
    ))
}

/// Distance from `target` to the nearest local minimum of `curve`.
pub fn nearest_minimum_distance(curve: &Curve, target: f64) -> f64 {
    curve
        .local_minima()
        .iter()
        .map(|d| (d - target).abs())
        .fold(f64::INFINITY, f64::min)
}

fn minimum_gates(label: &str, curve: &Curve, ordinates: &[f64]) -> Vec<Gate> {
    ordinates
        .iter()
        .map(|&g| {
            let nearest = curve
                .local_minima()
                .into_iter()
                .min_by(|a, b| (a - g).abs().total_cmp(&(b - g).abs()))
                .unwrap_or(f64::INFINITY);
            Gate::tolerance(format!("{label} minimum near {g:.6}"), g, nearest, 0.3)
        })
        .collect()
}

/// Covariance curve with `t = p_{1,000,000}` on `[2, 100]`.
pub fn covariance_curve_gates(ordinates: &[f64]) -> Result<Vec<Gate>> {
    let primes = first_n_primes(1_000_000)?;
    let deltas = grid(2.0, 100.0, 0.05)?;
    let cov = covariance_curve(&primes, &deltas)?;
    let lz = log_abs_zeta_curve(&deltas, acc())?;
    let mut gates = minimum_gates("covariance curve", &cov, ordinates);
    gates.push(Gate::upper_bound(
        "sup |2R_t - log|zeta(1+iD)||",
        cov.sup_distance(&lz)?,
        0.5,
    ));
    Ok(gates)
}

pub fn character_gates() -> Result<Vec<Gate>> {
    let mut gates = Vec::new();
    let expected_mse = [1.0 / 18.0, 1.0 / 8.0, 1.0 / 98.0];
    let quoted = [0.056, 0.125, 0.010];
    let inverse = [1.0 / 3.0, 1.0 / 2.0, 1.0 / 7.0];
    for (i, (label, spec)) in reference_characters().iter().enumerate() {
        let chi = DirichletCharacter::try_from(spec)?;
        let mse = character_truncation_mse(&chi);
        gates.push(Gate::tolerance(
            format!("chi_{label} truncation mse"),
            expected_mse[i],
            mse,
            1e-15,
        ));
        gates.push(Gate::tolerance(
            format!("chi_{label} mse rounded to 3 places"),
            quoted[i],
            (mse * 1000.0).round() / 1000.0,
            1e-12,
        ));
        gates.push(Gate::tolerance(
            format!("chi_{label} error bound"),
            1.0 - EULER_GAMMA + inverse[i],
            character_error_bound(&chi),
            1e-8,
        ));
    }
    Ok(gates)
}

/// `P(σ)` against direct prime sums up to 10^6 plus a tail allowance.
pub fn prime_zeta_oracle_gates(primes: &PrimeTable) -> Result<Vec<Gate>> {
    let x = primes.limit() as f64;
    let mut gates = Vec::new();
    for sigma in [1.5, 2.0, 3.0] {
        let full = prime_zeta_full(ComplexValue::new(sigma, 0.0), acc())?.re;
        let direct = truncated_prime_zeta(primes, ComplexValue::new(sigma, 0.0)).re;
        // Σ_{p>x} p^{-σ} ≤ 1.3 x^{1-σ} / ((σ-1) log x)
        let tail = 1.3 * x.powf(1.0 - sigma) / ((sigma - 1.0) * x.ln());
        gates.push(Gate::upper_bound(
            format!("P({sigma}) - direct sum"),
            full - direct,
            1e-6 + tail,
        ));
        gates.push(Gate::at_least(
            format!("P({sigma}) - direct sum nonnegative"),
            full - direct,
            -1e-6,
        ));
    }
    Ok(gates)
}

/// Sliding-window histogram against a brute-force double loop on 500 zeros.
pub fn histogram_oracle_gate(zeros: &ZeroTable) -> Result<Gate> {
    let small = zeros.first(500);
    let h = diff_histogram(&small, 5.0, 30.0, 0.05)?;
    let g = small.ordinates();
    let mut brute = vec![0u64; h.counts.len()];
    for j in 0..g.len() {
        for k in 0..j {
            if let Some(b) = h.bin_of(g[j] - g[k]) {
                brute[b] += 1;
            }
        }
    }
    let mismatched = h.counts.iter().zip(&brute).filter(|(a, b)| a != b).count();
    Ok(Gate::tolerance(
        "histogram vs double loop (mismatched bins)",
        0.0,
        mismatched as f64,
        0.0,
    ))
}

/// Trough scores of the first-`n`-zeros difference histogram.
pub fn trough_gates(zeros: &ZeroTable, n: usize) -> Result<Vec<Gate>> {
    let table = zeros.first(n);
    let hist = diff_histogram(&table, 5.0, 30.0, 0.05)?;
    let in_range: Vec<f64> = table
        .ordinates()
        .iter()
        .copied()
        .take_while(|&g| g < 30.0)
        .collect();
    let mut midpoints: Vec<f64> = in_range.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    if let (Some(&last), Some(&next)) = (in_range.last(), table.ordinates().get(in_range.len())) {
        let mid = 0.5 * (last + next);
        if mid + 1.0 <= 30.0 {
            midpoints.push(mid);
        }
    }
    let mid_scores = midpoints
        .iter()
        .map(|&m| trough_score(&hist, m, 0.15, 1.0))
        .collect::<Result<Vec<_>>>()?;
    let floor = mid_scores.iter().copied().fold(f64::INFINITY, f64::min);
    let mut gates = Vec::new();
    for &g in in_range.iter().take(3) {
        let s = trough_score(&hist, g, 0.15, 1.0)?;
        gates.push(Gate::upper_bound(
            format!("trough score at {g:.6} ({n} zeros)"),
            s,
            0.9,
        ));
        gates.push(Gate::upper_bound(
            format!("trough score at {g:.6} below midpoint scores"),
            s,
            floor,
        ));
    }
    Ok(gates)
}

/// Shape of the conditional extreme-value probability at the 100,000th zero.
pub fn extreme_probability_gates(zeros: &ZeroTable) -> Result<Vec<Gate>> {
    let tau = zeros.nth(100_000).ok_or_else(|| {
        crate::Error::domain(format!(
            "zero table has {} entries; need 100000",
            zeros.len()
        ))
    })?;
    let deltas = grid(0.05, 100.0, 0.05)?;
    let curve = extreme_prob_curve(&deltas, tau, 3.0, SigmaConvention::Std, acc())?;
    let high = extreme_prob_curve(&deltas, tau.powi(10), 3.0, SigmaConvention::Std, acc())?;
    let mut gates = minimum_gates("extreme probability", &curve, &zeros.ordinates()[..3]);
    gates.push(Gate::upper_bound(
        "probability range at tau^10 below range at tau",
        high.range(),
        curve.range(),
    ));
    Ok(gates)
}

pub fn lyapunov_gate() -> Result<Gate> {
    let base = sieve_primes(1_000_000)?;
    let ratios = [1_000u64, 10_000, 100_000, 1_000_000]
        .iter()
        .map(|&t| lyapunov_ratio(&base.truncated(t)))
        .collect::<Result<Vec<_>>>()?;
    let decreases = ratios.windows(2).filter(|w| w[1] < w[0]).count();
    Ok(Gate::at_least(
        "Lyapunov ratio strictly decreasing steps (of 3)",
        decreases as f64,
        3.0,
    ))
}

/// Monte Carlo covariance at 20 lags, cross-prime independence, and the
/// anti-correlation at the first ordinate.
pub fn sampled_covariance_gates(seed: u64, first_ordinate: f64) -> Result<Vec<Gate>> {
    let primes = sieve_primes(100_000)?;
    let cfg = SampleConfig::new(1e7, 100_000, seed)?;
    let series = PrimeSeries::new(&primes, 0.5);
    let mut deltas: Vec<f64> = (1..=20).map(|j| 5.0 * j as f64).collect();
    deltas.push(first_ordinate);
    let targets: Vec<f64> = crate::par::map_slice(&deltas, |&d| 0.5 * series.covariance(d));
    let est = covariance_profile(&series, &cfg, &deltas)?;
    let mut hits_re = 0;
    let mut hits_im = 0;
    for (e, &t) in est.iter().zip(&targets).take(20) {
        hits_re += e.re.within(t, 3.0) as usize;
        hits_im += e.im.within(t, 3.0) as usize;
    }
    let trough = est[20];
    let trough_target = targets[20];
    let mut gates = vec![
        Gate::at_least(
            "Re covariance within 3 stderr (of 20 lags)",
            hits_re as f64,
            18.0,
        ),
        Gate::at_least(
            "Im covariance within 3 stderr (of 20 lags)",
            hits_im as f64,
            18.0,
        ),
        Gate::statistical(
            format!("Re covariance at {first_ordinate:.6}"),
            trough_target,
            trough.re.value,
            trough.re.stderr,
            3.0,
        ),
        Gate::upper_bound(
            format!("Re covariance at {first_ordinate:.6} is negative"),
            trough.re.value,
            0.0,
        ),
    ];

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let p = primes.primes();
    let mut pairs = vec![(2u64, 3u64)];
    while pairs.len() < 11 {
        let a = p[(rng.next_u64() % p.len() as u64) as usize];
        let b = p[(rng.next_u64() % p.len() as u64) as usize];
        if a != b {
            pairs.push((a, b));
        }
    }
    let small = SampleConfig::new(1e7, 100_000, seed.wrapping_add(1))?;
    for (a, b) in pairs {
        let (re, im) = summand_cross_covariance(a, b, &small)?;
        gates.push(Gate::statistical(
            format!("cross covariance Re p={a} q={b}"),
            0.0,
            re.value,
            re.stderr,
            4.0,
        ));
        gates.push(Gate::statistical(
            format!("cross covariance Im p={a} q={b}"),
            0.0,
            im.value,
            im.stderr,
            4.0,
        ));
    }
    Ok(gates)
}

/// Normalized moments of `Re P_t(1/2+iτ)` at `t = 10^6`.
pub fn moment_gates(seed: u64) -> Result<Vec<Gate>> {
    let primes = sieve_primes(1_000_000)?;
    let cfg = SampleConfig::new(NORMALITY_HEIGHT, 100_000, seed)?;
    Ok(normality_report(&primes, &cfg)?.gates)
}

/// Run every gate for the level. Gates that need zero ordinates are only
/// included when a table is supplied.
pub fn run(options: &VerifyOptions, zeros: Option<&ZeroTable>) -> Result<VerifyReport> {
    let mut gates = truncation_gates()?;
    gates.push(gamma_gate());
    gates.push(one_line_error_gate()?);
    gates.extend(character_gates()?);
    gates.extend(prime_zeta_oracle_gates(&sieve_primes(1_000_000)?)?);
    gates.push(lyapunov_gate()?);
    if let Some(z) = zeros {
        gates.push(histogram_oracle_gate(z)?);
        gates.extend(trough_gates(z, 10_000)?);
        if z.len() >= 100_000 {
            gates.extend(extreme_probability_gates(z)?);
        }
    }
    if options.level == Level::Full {
        let ordinates: Vec<f64> = match zeros {
            Some(z) => z.ordinates().iter().take(3).copied().collect(),
            None => vec![14.134725, 21.022040, 25.010858],
        };
        gates.extend(covariance_curve_gates(&ordinates)?);
        gates.extend(sampled_covariance_gates(options.seed, ordinates[0])?);
        gates.extend(moment_gates(options.seed)?);
    }
    if options.tolerance_scale != 1.0 {
        gates = gates
            .into_iter()
            .map(|g| g.scaled(options.tolerance_scale))
            .collect();
    }
    let pass = gates.iter().all(|g| g.pass);
    Ok(VerifyReport {
        level: options.level,
        seed: options.seed,
        zeros_loaded: zeros.map(ZeroTable::len),
        gates,
        pass,
    })
}
