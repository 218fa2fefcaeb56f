//! Monte Carlo invariants at moderate sample sizes.

use pzeta_core::characters::reference_characters;
use pzeta_core::sampling::{covariance_profile, summand_cross_covariance};
use pzeta_core::series::PrimeSeries;
use pzeta_core::*;
use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn samples_are_deterministic() {
    let primes = sieve_primes(1000).unwrap();
    let cfg = SampleConfig::new(1e7, 2000, 99).unwrap();
    let a = sample_series(&primes, &cfg).unwrap();
    let b = sample_series(&primes, &cfg).unwrap();
    assert_eq!(a, b);
    let other = sample_series(&primes, &SampleConfig::new(1e7, 2000, 100).unwrap()).unwrap();
    assert_ne!(a, other);
    // sample k does not depend on how many samples are drawn
    let short = sample_series(&primes, &SampleConfig::new(1e7, 500, 99).unwrap()).unwrap();
    assert_eq!(&a[..500], &short[..]);
}

#[test]
fn real_and_imaginary_covariances_agree_and_anticorrelate_at_first_ordinate() {
    let primes = sieve_primes(100_000).unwrap();
    let cfg = SampleConfig::new(1e7, 10_000, 3).unwrap();
    let series = PrimeSeries::new(&primes, 0.5);
    let deltas = [3.0, 14.134725, 40.0, 77.7];
    let targets = covariance_curve(&primes, &deltas).unwrap();
    let est = covariance_profile(&series, &cfg, &deltas).unwrap();
    for (e, &t) in est.iter().zip(targets.values()) {
        assert!(e.re.within(0.5 * t, 4.0), "{e:?} vs {}", 0.5 * t);
        assert!(e.im.within(0.5 * t, 4.0), "{e:?} vs {}", 0.5 * t);
    }
    assert!(est[1].re.value + 4.0 * est[1].re.stderr < 0.0);
    assert!(est[1].im.value + 4.0 * est[1].im.stderr < 0.0);
}

#[test]
fn independence_grid() {
    let primes = sieve_primes(10_000).unwrap();
    let p = primes.primes();
    let cfg = SampleConfig::new(1e7, 20_000, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 10 {
        let a = p[(rng.next_u64() % p.len() as u64) as usize];
        let b = p[(rng.next_u64() % p.len() as u64) as usize];
        if a == b {
            continue;
        }
        let (re, im) = summand_cross_covariance(a, b, &cfg).unwrap();
        assert!(re.within(0.0, 4.0), "p={a} q={b} re {re:?}");
        assert!(im.within(0.0, 4.0), "p={a} q={b} im {im:?}");
        checked += 1;
    }
}

#[test]
fn character_covariance_tracks_riemann_curve() {
    let primes = sieve_primes(10_000).unwrap();
    let cfg = SampleConfig::new(1e7, 20_000, 11).unwrap();
    let deltas = grid(2.0, 100.0, 7.0).unwrap();
    let riemann = covariance_curve(&primes, &deltas).unwrap();
    for (label, spec) in reference_characters() {
        let chi = DirichletCharacter::try_from(&spec).unwrap();
        let series = chi.series(&primes, 0.5);
        let bound = character_error_bound(&chi);
        let est = covariance_profile(&series, &cfg, &deltas).unwrap();
        for (e, &r) in est.iter().zip(riemann.values()) {
            let gap = (2.0 * e.re.value - r).abs();
            assert!(
                gap <= bound + 3.0 * 2.0 * e.re.stderr,
                "chi_{label} at {}: gap {gap}",
                e.delta
            );
        }
    }
}
