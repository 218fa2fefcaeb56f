//! Prime zeta function statistics and Riemann zero-difference repulsion.
//!
//! The crate evaluates truncated prime Dirichlet series `P_t(s) = Σ_{p≤t} p^{-s}`,
//! continues the full prime zeta function `P(s)` to the 1-line through the
//! Möbius-inverted logarithm of `ζ`, and uses both to study
//!
//! - the covariance curve `2R_t(Δ) = Re P_t(1+iΔ)` and its closeness to `log|ζ(1+iΔ)|`,
//! - Monte Carlo checks of independence and asymptotic normality of `P_t(1/2+iτ)`,
//! - histograms of differences between Riemann zero ordinates,
//! - the conditional Gaussian for `Re P(1/2+i(τ+Δ))` given a zero at `τ`,
//! - the same machinery twisted by Dirichlet characters.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod characters;
pub mod curve;
pub mod error;
pub mod par;
pub mod prime_zeta;
pub mod primes;
pub mod repulsion;
pub mod sampling;
pub mod series;
pub mod sum;
pub mod trig;
pub mod verify;
pub mod zeros;
pub mod zeta;

pub use characters::{
    build_character, character_error_bound, character_prime_series, character_truncation_mse,
    CharacterSpec, DirichletCharacter,
};
pub use curve::{grid, Curve};
pub use error::{Error, Result};
pub use prime_zeta::{
    covariance_curve, mobius, prime_zeta_full, truncated_prime_zeta, truncation_mse,
};
pub use primes::{nth_prime, sieve_primes, PrimeTable};
pub use repulsion::{
    conditional_at_zero, extreme_prob_curve, normal_cdf, ConditionalGaussian, SigmaConvention,
};
pub use sampling::{
    empirical_covariance, lyapunov_ratio, normality_summary, sample_series, Estimate,
    MomentSummary, SampleConfig,
};
pub use zeros::{diff_histogram, load_zeros, trough_score, DiffHistogram, ZeroTable};
pub use zeta::{
    euler_gamma_residual, log_abs_zeta_1line, zeta_complex, zeta_real, EvalAccuracy, EULER_GAMMA,
};

/// Real/imaginary pair carrying `s`, `ζ(s)`, `P(s)` and friends.
pub type ComplexValue = num_complex::Complex64;
