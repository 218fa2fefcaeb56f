//! Riemann zeta function on the closed half-plane `Re(s) ≥ 1`.
//!
//! Values come from Euler–Maclaurin summation
//!
//! ```text
//! ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_{k=1}^{M} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1} + R
//! ```
//!
//! with `N` chosen so successive correction terms shrink at least fourfold and
//! `M` grown until the last term is below the requested tolerance. For large
//! `Re(s)` the plain Dirichlet series is cheaper and is used instead.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ComplexValue;

/// Euler–Mascheroni constant γ (20 significant digits).
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// |Δ| at or below this is treated as the pole of ζ at 1.
pub const POLE_EXCLUSION: f64 = 1e-3;

/// Target accuracy for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalAccuracy {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl EvalAccuracy {
    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol >= 1e-12) || !abs_tol.is_finite() {
            return Err(Error::domain(format!(
                "abs_tol must be >= 1e-12, got {abs_tol}"
            )));
        }
        if max_terms < 10 {
            return Err(Error::domain(format!(
                "max_terms must be >= 10, got {max_terms}"
            )));
        }
        Ok(EvalAccuracy { abs_tol, max_terms })
    }
}

impl Default for EvalAccuracy {
    fn default() -> Self {
        EvalAccuracy {
            abs_tol: 1e-10,
            max_terms: 1_000_000,
        }
    }
}

/// Even-index Bernoulli numbers `B_2 … B_30` as (numerator, denominator).
const BERNOULLI_EVEN: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

/// `B_{2k} / (2k)!` for `k = 1..=15`.
fn bernoulli_coefficients() -> [f64; 15] {
    let mut out = [0.0; 15];
    let mut factorial = 1.0f64;
    for (k, slot) in out.iter_mut().enumerate() {
        let two_k = 2 * (k + 1);
        factorial *= (two_k - 1) as f64 * two_k as f64;
        let (num, den) = BERNOULLI_EVEN[k];
        *slot = num / den / factorial;
    }
    out
}

#[inline]
fn n_pow_minus_s(n: usize, s: ComplexValue) -> ComplexValue {
    let ln = (n as f64).ln();
    let mag = (-s.re * ln).exp();
    let (sin, cos) = (s.im * ln).sin_cos();
    ComplexValue::new(mag * cos, -mag * sin)
}

/// Euler–Maclaurin with `n` direct terms; `None` if the correction series has
/// not settled below `tol` after all available Bernoulli terms.
fn euler_maclaurin(s: ComplexValue, n: usize, tol: f64) -> Option<ComplexValue> {
    let mut head = ComplexValue::new(0.0, 0.0);
    // descending order adds the small terms first
    for k in (1..n).rev() {
        head += n_pow_minus_s(k, s);
    }
    let n_s = n_pow_minus_s(n, s);
    let nf = n as f64;
    let one = ComplexValue::new(1.0, 0.0);
    let tail = n_s * nf / (s - one) + n_s * 0.5;

    let coeffs = bernoulli_coefficients();
    let inv_n2 = 1.0 / (nf * nf);
    // factor_k = s(s+1)…(s+2k-2) N^{-s-2k+1}
    let mut factor = s * n_s / nf;
    let mut correction = ComplexValue::new(0.0, 0.0);
    for (k, &c) in coeffs.iter().enumerate() {
        let term = factor * c;
        correction += term;
        if term.norm() < tol * 0.25 {
            return Some(head + tail + correction);
        }
        let j = 2.0 * (k + 1) as f64;
        factor = factor * (s + (j - 1.0)) * (s + j) * inv_n2;
    }
    None
}

/// Number of Dirichlet-series terms whose tail `K^{1-σ}/(σ-1)` is below `tol`.
fn direct_terms_needed(sigma: f64, tol: f64) -> f64 {
    ((sigma - 1.0) * tol).powf(-1.0 / (sigma - 1.0)).ceil()
}

/// ζ(s) for `Re(s) ≥ 1`, `s ≠ 1`.
pub fn zeta_complex(s: ComplexValue, acc: EvalAccuracy) -> Result<ComplexValue> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::domain(format!("non-finite argument {s}")));
    }
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Singularity("ζ has a pole at s = 1".into()));
    }
    if s.re < 1.0 {
        return Err(Error::domain(format!(
            "Re(s) = {} < 1 is outside the supported half-plane",
            s.re
        )));
    }
    let tol = acc.abs_tol;

    let start = 10usize.max(((s.norm() + 30.0) / PI).ceil() as usize);
    if s.re > 1.5 {
        let k = direct_terms_needed(s.re, tol * 0.5);
        if k <= start as f64 {
            let k = k as usize;
            let mut acc_sum = ComplexValue::new(0.0, 0.0);
            for n in (1..=k).rev() {
                acc_sum += n_pow_minus_s(n, s);
            }
            return Ok(acc_sum);
        }
    }

    let mut n = start;
    loop {
        if n > acc.max_terms {
            return Err(Error::Convergence {
                s: s.to_string(),
                max_terms: acc.max_terms,
            });
        }
        if let Some(v) = euler_maclaurin(s, n, tol) {
            return Ok(v);
        }
        n *= 2;
    }
}

/// ζ(s) for real `s > 1`.
pub fn zeta_real(s: f64, acc: EvalAccuracy) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::domain(format!(
            "ζ(s) for real s requires s > 1, got {s}"
        )));
    }
    Ok(zeta_complex(ComplexValue::new(s, 0.0), acc)?.re)
}

/// Continuous branch of `log ζ(s)` for `Re(s) ≥ 1`, i.e. the branch that
/// tends to 0 as `Re(s) → ∞` along a horizontal line.
pub fn log_zeta(s: ComplexValue, acc: EvalAccuracy) -> Result<ComplexValue> {
    let z = zeta_complex(s, acc)?;
    if s.re >= 2.0 {
        // |ζ(s) - 1| ≤ ζ(2) - 1 < 1 here, so the principal branch is the right one
        return Ok(z.ln());
    }
    let mut prev = zeta_complex(ComplexValue::new(2.0, s.im), acc)?;
    let mut arg = prev.arg();
    let steps = ((2.0 - s.re) / 0.05).ceil().max(1.0) as usize;
    let h = (2.0 - s.re) / steps as f64;
    for j in 1..=steps {
        let sigma = if j == steps { s.re } else { 2.0 - h * j as f64 };
        let cur = if j == steps {
            z
        } else {
            zeta_complex(ComplexValue::new(sigma, s.im), acc)?
        };
        arg += (cur / prev).arg();
        prev = cur;
    }
    Ok(ComplexValue::new(z.norm().ln(), arg))
}

/// `log|ζ(1 + iΔ)|`.
pub fn log_abs_zeta_1line(delta: f64, acc: EvalAccuracy) -> Result<f64> {
    if delta.abs() <= POLE_EXCLUSION {
        return Err(Error::Singularity(format!(
            "Δ = {delta} is within {POLE_EXCLUSION} of the pole of ζ at 1"
        )));
    }
    Ok(zeta_complex(ComplexValue::new(1.0, delta), acc)?
        .norm()
        .ln())
}

/// `ζ(n) - 1` for integer `n ≥ 2`.
pub fn zeta_minus_one(n: u32, acc: EvalAccuracy) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("ζ(n) - 1 needs n >= 2"));
    }
    // Σ_{k≥2} k^{-n}, evaluated directly once the terms die fast enough
    if n >= 12 {
        let mut sum = 0.0;
        let mut k = 2u32;
        loop {
            let term = (k as f64).powi(-(n as i32));
            sum += term;
            if term < 1e-18 {
                return Ok(sum);
            }
            k += 1;
        }
    }
    Ok(zeta_real(n as f64, acc)? - 1.0)
}

/// `Σ_{n=2}^{n_max} (ζ(n) - 1)/n`.
pub fn euler_gamma_partial(n_max: u32, acc: EvalAccuracy) -> Result<f64> {
    let mut sum = 0.0;
    for n in (2..=n_max).rev() {
        sum += zeta_minus_one(n, acc)? / n as f64;
    }
    Ok(sum)
}

/// Cutoff `N` with tail bound `2^{1-N}/N < 1e-10`.
pub fn euler_gamma_cutoff() -> u32 {
    let mut n = 2u32;
    while 2f64.powi(1 - n as i32) / n as f64 >= 1e-10 {
        n += 1;
    }
    n
}

/// `Σ_{n≥2} (ζ(n) - 1)/n`, which equals `1 - γ`.
pub fn euler_gamma_residual() -> f64 {
    euler_gamma_partial(euler_gamma_cutoff(), EvalAccuracy::default())
        .expect("integer arguments n >= 2 are always in range")
}
