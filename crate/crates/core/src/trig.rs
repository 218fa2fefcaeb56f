//! Cosine and sine of angles measured in turns (`2π·x`).
//!
//! Large trigonometric sums spend nearly all of their time here, so the
//! reduction is done once in turns: `x - round(x)` is exact in floating point,
//! and the remaining octant is handled by short Taylor polynomials whose
//! truncation error is below `1e-17` on `[-π/4, π/4]`.

use std::f64::consts::TAU;

/// Adding and subtracting `1.5·2^52` rounds to the nearest integer (ties to
/// even) for `|x| < 2^51` without a libm call.
const ROUND_MAGIC: f64 = 6_755_399_441_055_744.0;

/// `(-1)^k / (2k+1)!` for `k < 8`.
const SIN_COEFFS: [f64; 8] = [
    1.0,
    -1.0 / 6.0,
    1.0 / 120.0,
    -1.0 / 5040.0,
    1.0 / 362_880.0,
    -1.0 / 39_916_800.0,
    1.0 / 6_227_020_800.0,
    -1.0 / 1_307_674_368_000.0,
];

/// `(-1)^k / (2k)!` for `k < 11`.
const COS_COEFFS: [f64; 11] = [
    1.0,
    -0.5,
    1.0 / 24.0,
    -1.0 / 720.0,
    1.0 / 40_320.0,
    -1.0 / 3_628_800.0,
    1.0 / 479_001_600.0,
    -1.0 / 87_178_291_200.0,
    1.0 / 20_922_789_888_000.0,
    -1.0 / 6_402_373_705_728_000.0,
    1.0 / 2_432_902_008_176_640_000.0,
];

/// `Σ coeffs[k] · x^k`.
#[inline(always)]
fn horner(x: f64, coeffs: &[f64]) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

#[inline(always)]
fn round_fast(x: f64) -> f64 {
    (x + ROUND_MAGIC) - ROUND_MAGIC
}

/// Returns `(cos 2πx, sin 2πx)` for `|x| < 2^50`.
#[inline]
pub fn cos_sin_turns(x: f64) -> (f64, f64) {
    let r = x - round_fast(x);
    let q = round_fast(4.0 * r);
    let t = TAU * (r - 0.25 * q);
    let t2 = t * t;

    let s = t * horner(t2, &SIN_COEFFS);
    let c = horner(t2, &COS_COEFFS[..9]);

    match (q as i64) & 3 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

/// `cos 2πx` for `|x| < 2^50`. Branch-free so that loops over it vectorize.
#[inline]
pub fn cos_turns(x: f64) -> f64 {
    let a = (x - round_fast(x)).abs();
    // cos(2πa) = -cos(2π(1/2 - a)) folds [1/4, 1/2] onto [0, 1/4]
    let flip = a > 0.25;
    let b = if flip { 0.5 - a } else { a };
    let t = TAU * b;
    let t2 = t * t;
    let c = horner(t2, &COS_COEFFS);
    if flip {
        -c
    } else {
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cardinal_points() {
        let (c, s) = cos_sin_turns(0.0);
        assert_eq!((c, s), (1.0, 0.0));
        let (c, s) = cos_sin_turns(0.25);
        assert!(c.abs() < 1e-16 && (s - 1.0).abs() < 1e-16);
        let (c, s) = cos_sin_turns(-0.5);
        assert!((c + 1.0).abs() < 1e-16 && s.abs() < 1e-15);
        let (c, s) = cos_sin_turns(0.75);
        assert!(c.abs() < 1e-15 && (s + 1.0).abs() < 1e-16);
    }

    proptest! {
        #[test]
        fn matches_std_on_reduced_range(x in -4.0f64..4.0) {
            let (c, s) = cos_sin_turns(x);
            let a = TAU * x;
            prop_assert!((c - a.cos()).abs() < 5e-15);
            prop_assert!((s - a.sin()).abs() < 5e-15);
        }

        #[test]
        fn cos_only_matches_pair(x in -1e6f64..1e6) {
            prop_assert!((cos_turns(x) - cos_sin_turns(x).0).abs() < 5e-15);
        }

        #[test]
        fn unit_modulus(x in -1e7f64..1e7) {
            let (c, s) = cos_sin_turns(x);
            prop_assert!((c * c + s * s - 1.0).abs() < 1e-15);
        }
    }
}
