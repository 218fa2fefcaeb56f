//! Browser bindings: the covariance curve with its log|ζ(1+iΔ)| reference,
//! the conditional extreme-value probability near a zero, and Dirichlet
//! character summaries with their twisted covariance curves.

use pzeta_core::characters::{
    character_error_bound, character_truncation_mse, CharacterSpec, DirichletCharacter,
};
use pzeta_core::prime_zeta::{covariance_curve, log_abs_zeta_curve};
use pzeta_core::series::PrimeSeries;
use pzeta_core::{extreme_prob_curve, grid, sieve_primes, EvalAccuracy, Result, SigmaConvention};
use wasm_bindgen::prelude::*;

/// Largest prime limit accepted from the page.
pub const MAX_BROWSER_LIMIT: u64 = 20_000_000;

/// Sampled curves sharing one Δ grid.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Curves {
    deltas: Vec<f64>,
    primary: Vec<f64>,
    reference: Vec<f64>,
}

#[wasm_bindgen]
impl Curves {
    #[wasm_bindgen(getter)]
    pub fn deltas(&self) -> Vec<f64> {
        self.deltas.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn primary(&self) -> Vec<f64> {
        self.primary.clone()
    }

    /// Empty when the curve has no reference.
    #[wasm_bindgen(getter)]
    pub fn reference(&self) -> Vec<f64> {
        self.reference.clone()
    }
}

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterInfo {
    modulus: u64,
    order: u64,
    real: bool,
    mse: f64,
    error_bound: f64,
    values_re: Vec<f64>,
    values_im: Vec<f64>,
}

#[wasm_bindgen]
impl CharacterInfo {
    #[wasm_bindgen(getter)]
    pub fn modulus(&self) -> u32 {
        self.modulus as u32
    }

    #[wasm_bindgen(getter)]
    pub fn order(&self) -> u32 {
        self.order as u32
    }

    #[wasm_bindgen(getter)]
    pub fn real(&self) -> bool {
        self.real
    }

    #[wasm_bindgen(getter)]
    pub fn mse(&self) -> f64 {
        self.mse
    }

    #[wasm_bindgen(getter, js_name = errorBound)]
    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    #[wasm_bindgen(getter, js_name = valuesRe)]
    pub fn values_re(&self) -> Vec<f64> {
        self.values_re.clone()
    }

    #[wasm_bindgen(getter, js_name = valuesIm)]
    pub fn values_im(&self) -> Vec<f64> {
        self.values_im.clone()
    }
}

fn check_limit(limit: f64) -> Result<u64> {
    if !(2.0..=MAX_BROWSER_LIMIT as f64).contains(&limit) {
        return Err(pzeta_core::Error::Domain(format!(
            "prime limit must lie in [2, {MAX_BROWSER_LIMIT}], got {limit}"
        )));
    }
    Ok(limit as u64)
}

pub fn covariance_curves(limit: f64, delta_min: f64, delta_max: f64, step: f64) -> Result<Curves> {
    let primes = sieve_primes(check_limit(limit)?)?;
    let deltas = grid(delta_min.max(0.05), delta_max, step)?;
    let cov = covariance_curve(&primes, &deltas)?;
    let reference = log_abs_zeta_curve(&deltas, EvalAccuracy::default())?;
    Ok(Curves {
        primary: cov.values().to_vec(),
        reference: reference.values().to_vec(),
        deltas,
    })
}

pub fn extreme_curves(
    tau: f64,
    sigmas: f64,
    caption: bool,
    delta_min: f64,
    delta_max: f64,
    step: f64,
) -> Result<Curves> {
    let deltas = grid(delta_min.max(0.05), delta_max, step)?;
    let convention = if caption {
        SigmaConvention::Variance
    } else {
        SigmaConvention::Std
    };
    let curve = extreme_prob_curve(&deltas, tau, sigmas, convention, EvalAccuracy::default())?;
    Ok(Curves {
        primary: curve.values().to_vec(),
        reference: Vec::new(),
        deltas,
    })
}

pub fn character_info(spec: &str) -> Result<CharacterInfo> {
    let chi = DirichletCharacter::try_from(&spec.parse::<CharacterSpec>()?)?;
    Ok(CharacterInfo {
        modulus: chi.modulus(),
        order: chi.order(),
        real: chi.is_real(),
        mse: character_truncation_mse(&chi),
        error_bound: character_error_bound(&chi),
        values_re: chi.values().iter().map(|v| v.re).collect(),
        values_im: chi.values().iter().map(|v| v.im).collect(),
    })
}

/// `Σ_{p≤t} |χ(p)|² p^{-1} cos(Δ log p)` against the untwisted curve.
pub fn character_curves(
    spec: &str,
    limit: f64,
    delta_min: f64,
    delta_max: f64,
    step: f64,
) -> Result<Curves> {
    let chi = DirichletCharacter::try_from(&spec.parse::<CharacterSpec>()?)?;
    let primes = sieve_primes(check_limit(limit)?)?;
    let deltas = grid(delta_min.max(0.0), delta_max, step)?;
    let twisted: PrimeSeries = chi.series(&primes, 0.5);
    let plain = PrimeSeries::new(&primes, 0.5);
    Ok(Curves {
        primary: deltas.iter().map(|&d| twisted.covariance(d)).collect(),
        reference: deltas.iter().map(|&d| plain.covariance(d)).collect(),
        deltas,
    })
}

fn js<T>(r: Result<T>) -> std::result::Result<T, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = covarianceCurve)]
pub fn covariance_curve_js(
    limit: f64,
    delta_min: f64,
    delta_max: f64,
    step: f64,
) -> std::result::Result<Curves, JsError> {
    js(covariance_curves(limit, delta_min, delta_max, step))
}

#[wasm_bindgen(js_name = extremeProbability)]
pub fn extreme_probability_js(
    tau: f64,
    sigmas: f64,
    caption: bool,
    delta_min: f64,
    delta_max: f64,
    step: f64,
) -> std::result::Result<Curves, JsError> {
    js(extreme_curves(
        tau, sigmas, caption, delta_min, delta_max, step,
    ))
}

#[wasm_bindgen(js_name = characterInfo)]
pub fn character_info_js(spec: &str) -> std::result::Result<CharacterInfo, JsError> {
    js(character_info(spec))
}

#[wasm_bindgen(js_name = characterCurve)]
pub fn character_curve_js(
    spec: &str,
    limit: f64,
    delta_min: f64,
    delta_max: f64,
    step: f64,
) -> std::result::Result<Curves, JsError> {
    js(character_curves(spec, limit, delta_min, delta_max, step))
}
