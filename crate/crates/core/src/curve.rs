//! Sampled curves over a Δ grid and their CSV form.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(Δ, value)` samples with strictly increasing Δ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    deltas: Vec<f64>,
    values: Vec<f64>,
}

impl Curve {
    pub fn new(deltas: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if deltas.len() != values.len() {
            return Err(Error::domain(format!(
                "curve has {} deltas but {} values",
                deltas.len(),
                values.len()
            )));
        }
        if deltas.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::domain("curve deltas must be strictly increasing"));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain(format!("curve value {v} is not finite")));
        }
        Ok(Curve { deltas, values })
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.deltas.iter().copied().zip(self.values.iter().copied())
    }

    /// Δ positions of strict interior local minima.
    pub fn local_minima(&self) -> Vec<f64> {
        self.extrema(|a, b| a < b)
    }

    /// Δ positions of strict interior local maxima.
    pub fn local_maxima(&self) -> Vec<f64> {
        self.extrema(|a, b| a > b)
    }

    fn extrema(&self, better: impl Fn(f64, f64) -> bool) -> Vec<f64> {
        let v = &self.values;
        (1..v.len().saturating_sub(1))
            .filter(|&i| better(v[i], v[i - 1]) && better(v[i], v[i + 1]))
            .map(|i| self.deltas[i])
            .collect()
    }

    /// Whether some local minimum lies within `tol` of `target`.
    pub fn has_minimum_near(&self, target: f64, tol: f64) -> bool {
        self.local_minima()
            .iter()
            .any(|d| (d - target).abs() <= tol)
    }

    /// `max - min` of the values.
    pub fn range(&self) -> f64 {
        let max = self
            .values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let min = self.values.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    }

    /// `max |self - other|` over a shared grid.
    pub fn sup_distance(&self, other: &Curve) -> Result<f64> {
        if self.deltas != other.deltas {
            return Err(Error::domain("curves are sampled on different grids"));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// The samples with `lo ≤ Δ ≤ hi`.
    pub fn restricted(&self, lo: f64, hi: f64) -> Curve {
        let (deltas, values) = self.iter().filter(|(d, _)| *d >= lo && *d <= hi).unzip();
        Curve { deltas, values }
    }

    /// Two-column CSV with the given column names.
    pub fn write_csv<W: Write>(&self, mut out: W, header: (&str, &str)) -> std::io::Result<()> {
        writeln!(out, "{},{}", header.0, header.1)?;
        for (d, v) in self.iter() {
            writeln!(out, "{},{}", format_sig(d), format_sig(v))?;
        }
        Ok(())
    }
}

/// `min, min+step, …` up to `max` (inclusive when it lands on the grid).
/// Points are computed as `min + k·step`, never by accumulation.
pub fn grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::domain(format!(
            "grid step must be positive, got {step}"
        )));
    }
    if !min.is_finite() || !max.is_finite() || max < min {
        return Err(Error::domain(format!("invalid grid range [{min}, {max}]")));
    }
    let n = ((max - min) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|k| min + k as f64 * step).collect())
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        format!("{m}e{exp}")
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
