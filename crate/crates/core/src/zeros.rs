//! Riemann zero ordinate tables and histograms of their pairwise differences.
//!
//! Tables use the plain layout of the public Odlyzko files: ASCII, one
//! decimal ordinate per line, ascending, no header.

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

/// Ascending imaginary parts of nontrivial zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
}

impl ZeroTable {
    pub fn new(ordinates: Vec<f64>) -> Result<Self> {
        if ordinates.is_empty() {
            return Err(Error::EmptyTable);
        }
        for (i, &v) in ordinates.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("ordinate {v} must be positive and finite"),
                });
            }
            if i > 0 && !(v > ordinates[i - 1]) {
                return Err(Error::Monotonicity {
                    line: i + 1,
                    value: v,
                    previous: ordinates[i - 1],
                });
            }
        }
        Ok(ZeroTable { ordinates })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// The `n`-th ordinate, 1-based as zeros are conventionally numbered.
    pub fn nth(&self, n: usize) -> Option<f64> {
        n.checked_sub(1)
            .and_then(|i| self.ordinates.get(i))
            .copied()
    }

    /// The first `n` ordinates (or all of them if the table is shorter).
    pub fn first(&self, n: usize) -> ZeroTable {
        ZeroTable {
            ordinates: self.ordinates[..n.min(self.len())].to_vec(),
        }
    }
}

/// Parse a zero table. Blank lines are skipped; line numbers in errors are 1-based.
pub fn load_zeros<R: BufRead>(source: R) -> Result<ZeroTable> {
    let mut ordinates = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let value: f64 = text.parse().map_err(|_| Error::Parse {
            line: i + 1,
            msg: format!("expected a decimal ordinate, found {text:?}"),
        })?;
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("ordinate {value} must be positive and finite"),
            });
        }
        if let Some(&prev) = ordinates.last() {
            if !(value > prev) {
                return Err(Error::Monotonicity {
                    line: i + 1,
                    value,
                    previous: prev,
                });
            }
        }
        ordinates.push(value);
    }
    if ordinates.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(ZeroTable { ordinates })
}

/// Counts of pairwise differences in half-open bins `[lo + k·w, lo + (k+1)·w)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffHistogram {
    pub lo: f64,
    pub hi: f64,
    pub bin_width: f64,
    pub counts: Vec<u64>,
}

impl DiffHistogram {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn bin_left(&self, k: usize) -> f64 {
        self.lo + k as f64 * self.bin_width
    }

    pub fn bin_center(&self, k: usize) -> f64 {
        self.bin_left(k) + 0.5 * self.bin_width
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Bin holding `x`, honoring the half-open convention exactly at edges.
    pub fn bin_of(&self, x: f64) -> Option<usize> {
        if !(x >= self.lo) || !(x < self.hi) {
            return None;
        }
        let mut k = ((x - self.lo) / self.bin_width).floor() as isize;
        if k >= 0 && self.lo + (k + 1) as f64 * self.bin_width <= x {
            k += 1;
        }
        if k > 0 && self.lo + k as f64 * self.bin_width > x {
            k -= 1;
        }
        let k = (k.max(0) as usize).min(self.n_bins() - 1);
        Some(k)
    }

    /// `bin_left,count` CSV.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "bin_left,count")?;
        for (k, c) in self.counts.iter().enumerate() {
            writeln!(out, "{},{}", crate::curve::format_sig(self.bin_left(k)), c)?;
        }
        Ok(())
    }
}

fn bin_count(lo: f64, hi: f64, width: f64) -> usize {
    let ratio = (hi - lo) / width;
    let nearest = ratio.round();
    if (ratio - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest as usize
    } else {
        ratio.ceil() as usize
    }
}

/// Left elements per parallel work unit.
const CHUNK: usize = 4096;

/// Histogram of `γ_j - γ_k` over all pairs `j > k` with the difference in `[lo, hi)`.
///
/// Sorted ordinates let each left element scan only the window of partners
/// whose difference lies in range, so the cost is `O(n · d)` with `d` the
/// number of zeros in a window of length `hi`.
pub fn diff_histogram(
    zeros: &ZeroTable,
    lo: f64,
    hi: f64,
    bin_width: f64,
) -> Result<DiffHistogram> {
    if !(lo >= 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(Error::domain(format!(
            "invalid difference range [{lo}, {hi})"
        )));
    }
    if !(bin_width > 0.0) || !bin_width.is_finite() {
        return Err(Error::domain(format!(
            "bin width must be positive, got {bin_width}"
        )));
    }
    if zeros.len() < 2 {
        return Err(Error::domain("need at least two zeros for differences"));
    }
    let mut hist = DiffHistogram {
        lo,
        hi,
        bin_width,
        counts: vec![0; bin_count(lo, hi, bin_width)],
    };
    let g = zeros.ordinates();
    let n = g.len();
    let n_chunks = n.div_ceil(CHUNK);
    let partials = par::map_indices(n_chunks, |c| {
        let mut counts = vec![0u64; hist.counts.len()];
        let start = c * CHUNK;
        let end = (start + CHUNK).min(n);
        // first partner index with difference >= lo; nondecreasing in k
        let mut first = start + 1;
        for k in start..end {
            first = first.max(k + 1);
            while first < n && g[first] - g[k] < lo {
                first += 1;
            }
            let mut j = first;
            while j < n {
                let d = g[j] - g[k];
                if d >= hi {
                    break;
                }
                if let Some(b) = hist.bin_of(d) {
                    counts[b] += 1;
                }
                j += 1;
            }
        }
        counts
    });
    for part in partials {
        for (a, b) in hist.counts.iter_mut().zip(part) {
            *a += b;
        }
    }
    Ok(hist)
}

/// Mean count of bins centered within `half_width` of `center`, divided by
/// the mean count of flanking bins whose centers lie between `half_width`
/// and `window` away. Below 1 means the histogram dips at `center`.
pub fn trough_score(
    hist: &DiffHistogram,
    center: f64,
    half_width: f64,
    window: f64,
) -> Result<f64> {
    if !(half_width > 0.0) || !(window > half_width) {
        return Err(Error::domain(format!(
            "need window > half_width > 0, got window {window}, half_width {half_width}"
        )));
    }
    if center - window < hist.lo || center + window > hist.hi {
        return Err(Error::domain(format!(
            "[{}, {}] is outside the histogram range [{}, {})",
            center - window,
            center + window,
            hist.lo,
            hist.hi
        )));
    }
    let (mut inner, mut n_inner, mut outer, mut n_outer) = (0u64, 0usize, 0u64, 0usize);
    for (k, &c) in hist.counts.iter().enumerate() {
        let dist = (hist.bin_center(k) - center).abs();
        if dist <= half_width {
            inner += c;
            n_inner += 1;
        } else if dist <= window {
            outer += c;
            n_outer += 1;
        }
    }
    if n_inner == 0 || n_outer == 0 {
        return Err(Error::domain("trough or flank window contains no bins"));
    }
    if outer == 0 {
        return Err(Error::domain("flanking bins are empty"));
    }
    Ok((inner as f64 / n_inner as f64) / (outer as f64 / n_outer as f64))
}

/// One entry of the trough-score JSON summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TroughScore {
    pub center: f64,
    pub half_width: f64,
    pub window: f64,
    pub score: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table(v: &[f64]) -> ZeroTable {
        ZeroTable::new(v.to_vec()).unwrap()
    }

    #[test]
    fn parse_minimal() {
        let t = load_zeros("14.134725142\n21.022039639\n".as_bytes()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.nth(1), Some(14.134725142));
        let t = load_zeros("\n  14.1 \n\n21.0\n".as_bytes()).unwrap();
        assert_eq!(t.ordinates(), &[14.1, 21.0]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(load_zeros("".as_bytes()), Err(Error::EmptyTable)));
        assert!(matches!(
            load_zeros("\n\n".as_bytes()),
            Err(Error::EmptyTable)
        ));
        assert!(matches!(
            load_zeros("21.0\n14.1\n".as_bytes()),
            Err(Error::Monotonicity { line: 2, .. })
        ));
        assert!(matches!(
            load_zeros("14.1\n\nabc\n".as_bytes()),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            load_zeros("-3\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn toy_histogram() {
        let h = diff_histogram(&table(&[1.0, 2.0, 4.0]), 0.0, 5.0, 1.0).unwrap();
        assert_eq!(h.counts, vec![0, 1, 1, 1, 0]);
    }

    #[test]
    fn left_edge_belongs_to_bin() {
        let h = diff_histogram(&table(&[10.0, 15.1]), 5.0, 6.0, 0.05).unwrap();
        assert_eq!(h.n_bins(), 20);
        let d = 15.1 - 10.0;
        let b = h.bin_of(d).unwrap();
        assert!(h.bin_left(b) <= d && d < h.bin_left(b) + h.bin_width);
        assert_eq!(h.bin_of(h.bin_left(7)), Some(7));
        let h = diff_histogram(&table(&[1.0, 3.0]), 0.0, 4.0, 1.0).unwrap();
        assert_eq!(h.counts, vec![0, 0, 1, 0]);
    }

    #[test]
    fn domain_errors() {
        let t = table(&[1.0, 2.0]);
        assert!(diff_histogram(&t, 2.0, 1.0, 0.1).is_err());
        assert!(diff_histogram(&t, -1.0, 1.0, 0.1).is_err());
        assert!(diff_histogram(&t, 0.0, 1.0, 0.0).is_err());
        assert!(diff_histogram(&table(&[1.0]), 0.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn trough_scores() {
        let flat = DiffHistogram {
            lo: 0.0,
            hi: 10.0,
            bin_width: 0.1,
            counts: vec![7; 100],
        };
        assert!((trough_score(&flat, 5.0, 0.15, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let mut dip = flat.clone();
        for k in 48..=51 {
            dip.counts[k] = 0;
        }
        assert_eq!(trough_score(&dip, 5.0, 0.15, 1.0).unwrap(), 0.0);
        assert!(trough_score(&flat, 5.0, 1.0, 0.5).is_err());
        assert!(trough_score(&flat, 0.5, 0.15, 1.0).is_err());
        let empty = DiffHistogram {
            counts: vec![0; 100],
            ..flat
        };
        assert!(trough_score(&empty, 5.0, 0.15, 1.0).is_err());
    }

    fn brute_force(g: &[f64], lo: f64, hi: f64, w: f64) -> Vec<u64> {
        let h = DiffHistogram {
            lo,
            hi,
            bin_width: w,
            counts: vec![0; bin_count(lo, hi, w)],
        };
        let mut counts = h.counts.clone();
        for j in 0..g.len() {
            for k in 0..j {
                if let Some(b) = h.bin_of(g[j] - g[k]) {
                    counts[b] += 1;
                }
            }
        }
        counts
    }

    proptest! {
        #[test]
        fn sweep_matches_double_loop(
            steps in proptest::collection::vec(0.01f64..3.0, 2..300),
            lo in 0.0f64..5.0,
            span in 0.5f64..20.0,
            w in 0.05f64..1.0,
        ) {
            let mut g = Vec::with_capacity(steps.len());
            let mut x = 1.0;
            for s in steps {
                x += s;
                g.push(x);
            }
            let h = diff_histogram(&ZeroTable::new(g.clone()).unwrap(), lo, lo + span, w).unwrap();
            prop_assert_eq!(h.counts, brute_force(&g, lo, lo + span, w));
        }

        #[test]
        fn shift_invariant(
            steps in proptest::collection::vec(0.25f64..2.0, 2..200),
            shift in 1.0f64..64.0,
        ) {
            // dyadic steps and shifts keep every difference exact
            let steps: Vec<f64> = steps.iter().map(|s| (s * 64.0).round() / 64.0).collect();
            let shift = (shift * 64.0).round() / 64.0;
            let mut g = Vec::new();
            let mut x = 1.0;
            for s in &steps {
                x += s;
                g.push(x);
            }
            let shifted: Vec<f64> = g.iter().map(|v| v + shift).collect();
            let a = diff_histogram(&ZeroTable::new(g).unwrap(), 0.0, 10.0, 0.125).unwrap();
            let b = diff_histogram(&ZeroTable::new(shifted).unwrap(), 0.0, 10.0, 0.125).unwrap();
            prop_assert_eq!(a.counts, b.counts);
        }
    }
}
