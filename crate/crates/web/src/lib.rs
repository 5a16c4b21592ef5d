//! Browser bindings: ξ(v), the quot pullback by both methods, and Poincaré
//! polynomials of quot schemes.

use quotcoh::algebra::parse;
use quotcoh::combinatorics::TConvention;
use quotcoh::poincare::quot_poincare;
use quotcoh::quot::{psi_pullback, psi_pullback_combinatorial, InvariantMode};
use quotcoh::{RingContext, WeightVector, XiEngine};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn weight(text: &str) -> Result<WeightVector, String> {
    text.trim().parse().map_err(|e| format!("bad weight {text:?}: {e}"))
}

/// Canonical text of `ξ(v)` at the given genus.
pub fn xi_text(v: &str, genus: u32) -> Result<String, String> {
    let v = weight(v)?;
    let ctx = RingContext::new(genus, v.len());
    XiEngine::new(&ctx).xi(&v).map(|x| x.to_string()).map_err(|e| e.to_string())
}

/// JSON with both pullback computations and whether they agree.
pub fn psi_json(u: &str, a: &str, genus: u32) -> Result<String, String> {
    let u = weight(u)?;
    let ctx = RingContext::new(genus, u.len());
    let a = parse(&ctx, if a.trim().is_empty() { "1" } else { a }).map_err(|e| e.to_string())?;
    let engine = XiEngine::new(&ctx);
    let rec = psi_pullback(&engine, &u, &a, InvariantMode::Lenient).map_err(|e| e.to_string())?;
    let comb = psi_pullback_combinatorial(&ctx, &u, &a, InvariantMode::Lenient, TConvention::default())
        .map_err(|e| e.to_string())?;
    Ok(json!({
        "recursion": rec.value.to_string(),
        "combinatorial": comb.value.to_string(),
        "agree": rec.value == comb.value,
        "averaged": rec.averaged,
    })
    .to_string())
}

/// Betti numbers of `Quot(r, length)` as a JSON array.
pub fn quot_betti_json(genus: u32, r: u32, length: u32) -> String {
    json!(quot_poincare(genus, r, length)).to_string()
}

#[wasm_bindgen]
pub fn xi(v: &str, genus: u32) -> Result<String, JsValue> {
    xi_text(v, genus).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn psi(u: &str, a: &str, genus: u32) -> Result<String, JsValue> {
    psi_json(u, a, genus).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn quot_betti(genus: u32, r: u32, length: u32) -> String {
    quot_betti_json(genus, r, length)
}
