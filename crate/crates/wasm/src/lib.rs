//! wasm-bindgen bindings for the browser demo in `www/`.

use giant_ld::rate::{self, AlphaParam, Density};
use giant_ld::{saddle, sampler};
use wasm_bindgen::prelude::*;

fn alpha(a: f64) -> Result<AlphaParam, JsError> {
    Ok(AlphaParam::new(a)?)
}

/// `Φ(ρ, α)` at `ρ = i / steps` for `i = 0..=steps`.
#[wasm_bindgen]
pub fn rate_curve(a: f64, steps: u32) -> Result<Vec<f64>, JsError> {
    let alpha = alpha(a)?;
    if steps == 0 {
        return Err(JsError::new("steps must be at least 1"));
    }
    (0..=steps)
        .map(|i| Ok(rate::phi(Density::new(i as f64 / steps as f64)?, alpha)))
        .collect()
}

/// `[ρ*, s_∞, ρ_∞, Θ_∞, forest rate]` for one `α`.
#[wasm_bindgen]
pub fn mean_field(a: f64) -> Result<Vec<f64>, JsError> {
    let alpha = alpha(a)?;
    let lim = saddle::saddle_limits(alpha)?;
    Ok(vec![
        rate::mean_field_maximal(alpha).value(),
        lim.s,
        lim.rho,
        lim.theta,
        saddle::trees_rate(alpha),
    ])
}

/// `[s_r, ρ_r, Θ_r, proxy rate]` at cutoff `r`.
#[wasm_bindgen]
pub fn saddle_point(a: f64, r: u32) -> Result<Vec<f64>, JsError> {
    let sol = saddle::solve_saddle(alpha(a)?, r as usize)?;
    Ok(vec![sol.s_r, sol.rho_r.value(), sol.theta, sol.proxy_rate()])
}

/// Component sizes of one `G(n, α/n)` sample, largest first.
#[wasm_bindgen]
pub fn sample_components(n: u32, a: f64, seed: u64) -> Result<Vec<u32>, JsError> {
    let census = sampler::sample_census(n as usize, alpha(a)?, seed)?;
    Ok(census.sizes().iter().map(|&s| s as u32).collect())
}
