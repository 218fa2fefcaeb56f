//! Dirichlet characters and their prime series `P_χ(s) = Σ_p χ(p) p^{-s}`.
//!
//! A character is given by the images of a set of generators of `(ℤ/mℤ)^×`,
//! each a root of unity `e^{2πi·a/b}`. Angles are kept as exact fractions
//! over a common denominator, so consistency of the images (every relation
//! between generators respected) is checked without floating-point slack.

use std::collections::VecDeque;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::{distinct_prime_factors, PrimeTable};
use crate::series::PrimeSeries;
use crate::zeta::EULER_GAMMA;
use crate::ComplexValue;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `generator ↦ e^{2πi·numerator/denominator}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorImage {
    pub generator: u64,
    pub numerator: u64,
    pub denominator: u64,
}

/// Parsed `<modulus>:<generator>=<num>/<den>[,<generator>=<num>/<den>…]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterSpec {
    pub modulus: u64,
    pub images: Vec<GeneratorImage>,
}

impl FromStr for CharacterSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Character(format!("cannot parse {s:?}: {why}"));
        let (modulus, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let modulus: u64 = modulus
            .trim()
            .parse()
            .map_err(|_| bad("modulus is not an integer"))?;
        let mut images = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (g, frac) = part.split_once('=').ok_or_else(|| bad("missing '='"))?;
            let (num, den) = frac
                .split_once('/')
                .ok_or_else(|| bad("image must be num/den"))?;
            images.push(GeneratorImage {
                generator: g
                    .trim()
                    .parse()
                    .map_err(|_| bad("generator is not an integer"))?,
                numerator: num
                    .trim()
                    .parse()
                    .map_err(|_| bad("numerator is not an integer"))?,
                denominator: den
                    .trim()
                    .parse()
                    .map_err(|_| bad("denominator is not an integer"))?,
            });
        }
        Ok(CharacterSpec { modulus, images })
    }
}

impl fmt::Display for CharacterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.modulus)?;
        for (i, im) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}={}/{}", im.generator, im.numerator, im.denominator)?;
        }
        Ok(())
    }
}

/// A character table: `values[r] = χ(r)` for `r` in `0..modulus`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    /// `χ(r) = e^{2πi·angles[r]/denominator}` on units, `None` elsewhere
    angles: Vec<Option<u64>>,
    denominator: u64,
    values: Vec<ComplexValue>,
}

impl DirichletCharacter {
    /// The principal character: 1 on units, 0 elsewhere.
    pub fn principal(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Character(format!(
                "modulus must be >= 2, got {modulus}"
            )));
        }
        let angles = (0..modulus)
            .map(|r| (gcd(r, modulus) == 1).then_some(0))
            .collect();
        Ok(Self::from_angles(modulus, angles, 1))
    }

    fn from_angles(modulus: u64, angles: Vec<Option<u64>>, denominator: u64) -> Self {
        let values = angles
            .iter()
            .map(|a| match a {
                Some(a) => ComplexValue::from_polar(1.0, TAU * *a as f64 / denominator as f64),
                None => ComplexValue::new(0.0, 0.0),
            })
            .collect();
        DirichletCharacter {
            modulus,
            angles,
            denominator,
            values,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[ComplexValue] {
        &self.values
    }

    /// `χ(n)` for any integer `n ≥ 0`.
    pub fn value(&self, n: u64) -> ComplexValue {
        self.values[(n % self.modulus) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.angles.iter().all(|a| a.is_none_or(|a| a == 0))
    }

    /// Order of the character as an element of the dual group.
    pub fn order(&self) -> u64 {
        self.angles
            .iter()
            .flatten()
            .map(|&a| self.denominator / gcd(a, self.denominator))
            .fold(1, lcm)
    }

    pub fn is_real(&self) -> bool {
        self.order() <= 2
    }

    /// Primes dividing the modulus; χ vanishes on them.
    pub fn ramified_primes(&self) -> Vec<u64> {
        distinct_prime_factors(self.modulus)
    }

    /// `χ(p) p^{-σ}` series over a prime table.
    pub fn series(&self, primes: &PrimeTable, sigma: f64) -> PrimeSeries {
        PrimeSeries::twisted(primes, sigma, |p| self.value(p))
    }
}

/// Build and validate the character determined by generator images.
pub fn build_character(modulus: u64, images: &[GeneratorImage]) -> Result<DirichletCharacter> {
    if modulus < 2 {
        return Err(Error::Character(format!(
            "modulus must be >= 2, got {modulus}"
        )));
    }
    let mut denominator = 1u64;
    for im in images {
        if im.denominator == 0 {
            return Err(Error::Character(
                "image denominator must be positive".into(),
            ));
        }
        if gcd(im.generator % modulus, modulus) != 1 {
            return Err(Error::Character(format!(
                "generator {} is not a unit modulo {modulus}",
                im.generator
            )));
        }
        denominator = lcm(denominator, im.denominator);
    }
    let gens: Vec<(u64, u64)> = images
        .iter()
        .map(|im| {
            let a = (im.numerator % im.denominator) * (denominator / im.denominator);
            (im.generator % modulus, a % denominator)
        })
        .collect();

    let mut angles: Vec<Option<u64>> = vec![None; modulus as usize];
    let one = 1 % modulus;
    angles[one as usize] = Some(0);
    let mut queue = VecDeque::from([one]);
    while let Some(r) = queue.pop_front() {
        let a = angles[r as usize].expect("queued residues carry an angle");
        for &(g, ag) in &gens {
            let next = (r * g) % modulus;
            let an = (a + ag) % denominator;
            match angles[next as usize] {
                None => {
                    angles[next as usize] = Some(an);
                    queue.push_back(next);
                }
                Some(existing) if existing != an => {
                    return Err(Error::Character(format!(
                        "images are inconsistent: residue {next} would map to both \
                         e^(2πi·{existing}/{denominator}) and e^(2πi·{an}/{denominator}); \
                         an image's order must divide its generator's order"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    for r in 0..modulus {
        if gcd(r, modulus) == 1 && angles[r as usize].is_none() {
            return Err(Error::Character(format!(
                "generators do not generate the units modulo {modulus} (residue {r} unreached)"
            )));
        }
    }
    Ok(DirichletCharacter::from_angles(
        modulus,
        angles,
        denominator,
    ))
}

impl TryFrom<&CharacterSpec> for DirichletCharacter {
    type Error = Error;

    fn try_from(spec: &CharacterSpec) -> Result<Self> {
        build_character(spec.modulus, &spec.images)
    }
}

/// The three characters with small moduli used for the L-function examples:
/// the real characters modulo 3 and 4, and the cubic character modulo 7
/// sending the primitive root 3 to `e^{2πi/3}` (labelled `7,3`).
pub fn reference_characters() -> Vec<(&'static str, CharacterSpec)> {
    ["3:2=1/2", "4:3=1/2", "7:3=1/3"]
        .into_iter()
        .zip(["3", "4", "7,3"])
        .map(|(spec, label)| (label, spec.parse().expect("static spec")))
        .collect()
}

/// Truncated `Σ_{p≤t} χ(p) p^{-s}`.
pub fn character_prime_series(
    chi: &DirichletCharacter,
    primes: &PrimeTable,
    s: ComplexValue,
) -> ComplexValue {
    chi.series(primes, s.re).eval(s.im)
}

/// Bound `1 - γ + Σ_{p | m} 1/p` on the character analogue of `ε(Δ)`.
pub fn character_error_bound(chi: &DirichletCharacter) -> f64 {
    1.0 - EULER_GAMMA
        + chi
            .ramified_primes()
            .iter()
            .map(|&p| 1.0 / p as f64)
            .sum::<f64>()
}

/// Mean squared difference `½ Σ_{p | m} 1/p²` between the character
/// covariance function and `P(1+iΔ)`.
pub fn character_truncation_mse(chi: &DirichletCharacter) -> f64 {
    0.5 * chi
        .ramified_primes()
        .iter()
        .map(|&p| 1.0 / (p * p) as f64)
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve_primes;

    fn chi(spec: &str) -> DirichletCharacter {
        DirichletCharacter::try_from(&spec.parse::<CharacterSpec>().unwrap()).unwrap()
    }

    fn close(a: ComplexValue, re: f64, im: f64) -> bool {
        (a - ComplexValue::new(re, im)).norm() < 1e-12
    }

    #[test]
    fn mod_four() {
        let c = chi("4:3=1/2");
        assert!(close(c.value(1), 1.0, 0.0));
        assert!(close(c.value(3), -1.0, 0.0));
        assert!(close(c.value(0), 0.0, 0.0));
        assert!(close(c.value(2), 0.0, 0.0));
        assert!(c.is_real() && !c.is_principal());
    }

    #[test]
    fn mod_three() {
        let c = chi("3:2=1/2");
        assert!(close(c.value(1), 1.0, 0.0));
        assert!(close(c.value(2), -1.0, 0.0));
        assert!(close(c.value(3), 0.0, 0.0));
    }

    #[test]
    fn cubic_mod_seven() {
        let c = chi("7:3=1/3");
        assert_eq!(c.order(), 3);
        // 3 ↦ ω, 2 = 3^2 ↦ ω^2, 6 = 3^3 ↦ 1
        let w = ComplexValue::from_polar(1.0, TAU / 3.0);
        assert!((c.value(3) - w).norm() < 1e-12);
        assert!((c.value(2) - w * w).norm() < 1e-12);
        assert!(close(c.value(6), 1.0, 0.0));
    }

    #[test]
    fn orthogonality_and_multiplicativity() {
        for spec in [
            "3:2=1/2",
            "4:3=1/2",
            "7:3=1/3",
            "8:3=1/2,5=1/2",
            "15:2=1/4,11=1/2",
            "13:2=5/12",
        ] {
            let c = chi(spec);
            let total: ComplexValue = c.values().iter().sum();
            assert!(total.norm() < 1e-12, "{spec}");
            let m = c.modulus();
            for a in 0..m {
                let unit = gcd(a, m) == 1;
                assert_eq!(c.value(a).norm() > 0.5, unit);
                if unit {
                    assert!((c.value(a).norm() - 1.0).abs() < 1e-12);
                }
                for b in 0..m {
                    assert!((c.value(a * b) - c.value(a) * c.value(b)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn construction_errors() {
        // 2 has order 3 mod 7, so its image must be a cube root of unity
        assert!(matches!(
            build_character(
                7,
                &[GeneratorImage {
                    generator: 2,
                    numerator: 1,
                    denominator: 2
                }]
            ),
            Err(Error::Character(_))
        ));
        // 2 alone does not generate (Z/7Z)^×
        assert!(build_character(
            7,
            &[GeneratorImage {
                generator: 2,
                numerator: 1,
                denominator: 3
            }]
        )
        .is_err());
        assert!(build_character(
            4,
            &[GeneratorImage {
                generator: 2,
                numerator: 1,
                denominator: 2
            }]
        )
        .is_err());
        assert!(build_character(1, &[]).is_err());
        assert!("7-3=1/3".parse::<CharacterSpec>().is_err());
        assert!("7:3=1".parse::<CharacterSpec>().is_err());
    }

    #[test]
    fn spec_round_trip() {
        let s: CharacterSpec = "8:3=1/2,5=1/2".parse().unwrap();
        assert_eq!(s.to_string(), "8:3=1/2,5=1/2");
    }

    #[test]
    fn prime_series_values() {
        let c = chi("4:3=1/2");
        let two = PrimeTable::from_primes(vec![2]).unwrap();
        assert!(character_prime_series(&c, &two, ComplexValue::new(0.5, 3.0)).norm() < 1e-15);
        let t = sieve_primes(5).unwrap();
        let v = character_prime_series(&c, &t, ComplexValue::new(1.0, 0.0));
        assert!((v.re + 2.0 / 15.0).abs() < 1e-15 && v.im.abs() < 1e-15);
    }

    #[test]
    fn bounds_and_mse() {
        let g = 1.0 - EULER_GAMMA;
        let cases = [
            ("3:2=1/2", 1.0 / 3.0, 1.0 / 18.0),
            ("4:3=1/2", 0.5, 0.125),
            ("7:3=1/3", 1.0 / 7.0, 1.0 / 98.0),
        ];
        for (spec, inv, mse) in cases {
            let c = chi(spec);
            assert!((character_error_bound(&c) - (g + inv)).abs() < 1e-15);
            assert!((character_truncation_mse(&c) - mse).abs() < 1e-15);
        }
        assert!((character_error_bound(&chi("3:2=1/2")) - 0.75612).abs() < 1e-5);
        assert!((character_error_bound(&chi("4:3=1/2")) - 0.92278).abs() < 1e-5);
        assert!((character_error_bound(&chi("7:3=1/3")) - 0.56564).abs() < 1e-5);
    }

    #[test]
    fn mse_non_increasing_in_prime_modulus() {
        let mut last = f64::INFINITY;
        for (m, g) in [(3u64, 2u64), (5, 2), (7, 3), (11, 2), (13, 2)] {
            let c = build_character(
                m,
                &[GeneratorImage {
                    generator: g,
                    numerator: 1,
                    denominator: 2,
                }],
            )
            .unwrap();
            let v = character_truncation_mse(&c);
            assert!(v <= last);
            last = v;
        }
    }
}
