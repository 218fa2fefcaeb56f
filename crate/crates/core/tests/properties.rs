use proptest::prelude::*;
use pzeta_core::prime_zeta::log_abs_zeta_curve;
use pzeta_core::repulsion::conditional_at_zero;
use pzeta_core::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn nth_prime_is_last_of_its_sieve(n in 1u64..5000) {
        let p = nth_prime(n).unwrap();
        let table = sieve_primes(p).unwrap();
        prop_assert_eq!(table.largest(), Some(p));
        prop_assert_eq!(table.len() as u64, n);
    }

    #[test]
    fn sieves_are_prefixes(a in 2u64..200_000, extra in 0u64..200_000) {
        let small = sieve_primes(a).unwrap();
        let big = sieve_primes(a + extra).unwrap();
        prop_assert_eq!(small.primes(), &big.primes()[..small.len()]);
    }

    #[test]
    fn covariance_bounded_by_prime_harmonic_sum(t in 10u64..20_000, d in 0.0f64..200.0) {
        let table = sieve_primes(t).unwrap();
        let p1: f64 = table.primes().iter().map(|&p| 1.0 / p as f64).sum();
        let c = covariance_curve(&table, &[d]).unwrap().values()[0];
        prop_assert!(c <= p1 + 1e-12 && c >= -p1 - 1e-12);
    }
}

#[test]
fn conditional_mean_peaks_where_log_zeta_dips() {
    let acc = EvalAccuracy::default();
    let deltas = grid(10.0, 60.0, 0.05).unwrap();
    let tau = 74920.827498994;
    let means: Vec<f64> = deltas
        .iter()
        .map(|&d| conditional_at_zero(d, tau, acc).unwrap().mean)
        .collect();
    let maxima = Curve::new(deltas.clone(), means).unwrap().local_maxima();
    let minima = log_abs_zeta_curve(&deltas, acc).unwrap().local_minima();
    assert!(minima.len() >= 10);
    for m in &minima {
        let nearest = maxima
            .iter()
            .map(|a| (a - m).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(
            nearest <= 0.1 + 1e-9,
            "log|zeta| minimum at {m}: nearest mean maximum {nearest} away"
        );
    }
    for g in [14.134725, 21.022040, 25.010858] {
        assert!(
            maxima.iter().any(|a| (a - g).abs() <= 0.05),
            "{g}: {maxima:?}"
        );
    }
}

#[test]
fn probability_curve_flattens_with_height() {
    let acc = EvalAccuracy::default();
    let deltas = grid(0.5, 50.0, 0.25).unwrap();
    let mut last = f64::INFINITY;
    for tau in [1e3f64, 1e5, 1e10, 1e50] {
        let r = extreme_prob_curve(&deltas, tau, 3.0, SigmaConvention::Std, acc)
            .unwrap()
            .range();
        assert!(r < last, "range {r} at tau {tau}");
        last = r;
    }
}
