//! Browser bindings. Every export takes and returns strings; reports are
//! JSON, hypergraphs use the plain-text edge format.

use wasm_bindgen::prelude::*;

use oddtrans::format;
use oddtrans::generators;
use oddtrans::report::{self, AnalyzeOptions, BetaFamily};
use oddtrans::spectral::SpectralOptions;

pub fn analyze_json(text: &str, definitional_check: bool) -> Result<String, String> {
    let input = format::parse(text).map_err(|e| e.to_string())?;
    let opts = AnalyzeOptions {
        definitional_check,
        ..AnalyzeOptions::default()
    };
    serde_json::to_string(&report::analyze(&input, &opts)).map_err(|e| e.to_string())
}

pub fn spectra_json(text: &str, seed: u32) -> Result<String, String> {
    let input = format::parse(text).map_err(|e| e.to_string())?;
    let opts = SpectralOptions {
        seed: seed.into(),
        ..SpectralOptions::default()
    };
    let r = report::spectra(&input, &opts).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

/// `a` and `b` are the family parameters in the order the CLI takes them:
/// cayley `n k`, power `m k`, pp `q`, tworeg `k m`, simplex `k`.
pub fn generate_text(family: &str, a: usize, b: usize, seed: u32) -> Result<String, String> {
    let g = match family {
        "cayley" => generators::cayley(a, b),
        "power" => generators::cycle_power(a, b),
        "pp" => generators::projective_plane(a),
        "tworeg" => generators::two_regular_random(a, b, seed.into()),
        "simplex" => generators::simplex(a),
        name => {
            return generators::fixtures()
                .get(name)
                .map(|g| format::write(g, None))
                .ok_or_else(|| format!("unknown family `{name}`"))
        }
    }
    .map_err(|e| e.to_string())?;
    Ok(format::write(&g, None))
}

pub fn beta_trend_json(family: &str, k: usize, params: &str) -> Result<String, String> {
    let family: BetaFamily = family.parse()?;
    let params: Vec<usize> = params
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("bad parameter `{s}`")))
        .collect::<Result<_, _>>()?;
    let rows = report::beta_trend(family, k, &params, &SpectralOptions::default())
        .map_err(|e| e.to_string())?;
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn analyze(text: &str, definitional_check: bool) -> Result<String, JsValue> {
    analyze_json(text, definitional_check).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn spectra(text: &str, seed: u32) -> Result<String, JsValue> {
    spectra_json(text, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate(family: &str, a: usize, b: usize, seed: u32) -> Result<String, JsValue> {
    generate_text(family, a, b, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn beta_trend(family: &str, k: usize, params: &str) -> Result<String, JsValue> {
    beta_trend_json(family, k, params).map_err(|e| JsValue::from_str(&e))
}
