//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string; the plain functions behind them are
//! what the native tests exercise.

use serde::Serialize;
use serde_json::json;
use skewcode::capacity::{aas_sandwich, log2_phi, CapacityReport};
use skewcode::channel::{transmit, SkewMode, SkewPattern};
use skewcode::code::{build_codebook, Message};
use skewcode::graph::build_component;
use wasm_bindgen::prelude::*;

pub const CURVE_MAX_W: usize = 2000;
pub const GRAPH_MAX_W: usize = 12;
pub const BLOCK_MAX_W: usize = 64;

type Out = Result<String, String>;

fn to_json(v: impl Serialize) -> Out {
    serde_json::to_string(&v).map_err(|e| e.to_string())
}

/// `C_1w` and its gap to `log2(phi)` for `1..=w_max`.
pub fn curve(w_max: usize) -> Out {
    if !(2..=CURVE_MAX_W).contains(&w_max) {
        return Err(format!("w_max must be in 2..={CURVE_MAX_W}"));
    }
    let rows: Vec<_> = CapacityReport::table(w_max)
        .into_iter()
        .map(|r| json!({ "w": r.w, "capacity": r.capacity, "gap": r.limit_gap }))
        .collect();
    let aas = aas_sandwich(w_max);
    to_json(json!({
        "rows": rows,
        "log2_phi": log2_phi(),
        "upper": aas.upper,
        "upper_at": aas.upper_at,
        "summary": aas.summary(),
    }))
}

/// Vertices and edges of one weight class, with the codewords marked.
pub fn component(w: usize, h: usize) -> Out {
    if !(1..=GRAPH_MAX_W).contains(&w) {
        return Err(format!("w must be in 1..={GRAPH_MAX_W}"));
    }
    let c = build_component(w, h).map_err(|e| e.to_string())?;
    let codewords: Vec<usize> = (0..c.vertex_count())
        .filter(|&i| c.vertices()[i].all_even())
        .collect();
    to_json(json!({
        "w": w,
        "h": h,
        "vertices": c.vertices().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "edges": c.edges(),
        "codewords": codewords,
    }))
}

/// Admissible skews per slot, for the page to sample from.
pub fn choices(w: usize, mode: &str) -> Out {
    let mode: SkewMode = mode.parse()?;
    if !(1..=BLOCK_MAX_W).contains(&w) {
        return Err(format!("w must be in 1..={BLOCK_MAX_W}"));
    }
    to_json((1..=w).map(|k| mode.choices(k, w)).collect::<Vec<_>>())
}

/// Encodes `message`, pushes it through the skew `sigmas` and decodes.
/// `message` is decimal text so indices past 2^53 survive JavaScript.
pub fn send(w: usize, message: &str, mode: &str, sigmas: &[i8]) -> Out {
    let err = |e: skewcode::Error| e.to_string();
    if !(1..=BLOCK_MAX_W).contains(&w) {
        return Err(format!("w must be in 1..={BLOCK_MAX_W}"));
    }
    let mode: SkewMode = mode.parse()?;
    let m: u128 = message
        .trim()
        .parse()
        .map_err(|_| format!("message is not a nonnegative integer: {message:?}"))?;
    let cb = build_codebook(w).map_err(err)?;
    let word = cb.encode(Message(m)).map_err(err)?;
    let skew = SkewPattern::new(sigmas.to_vec(), mode).map_err(err)?;
    let rx = transmit(&word, &skew).map_err(err)?;
    let decoded = cb.decode(&rx).map_err(err)?;
    to_json(json!({
        "codebook_size": cb.len().to_string(),
        "word": word.to_string(),
        "skew": skew.sigmas(),
        "arrivals": rx.arrivals(),
        "decoded": decoded.0.to_string(),
        "ok": decoded == Message(m),
    }))
}

#[wasm_bindgen(js_name = capacityCurve)]
pub fn capacity_curve_js(w_max: usize) -> Result<String, JsError> {
    curve(w_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = weightComponent)]
pub fn weight_component_js(w: usize, h: usize) -> Result<String, JsError> {
    component(w, h).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = skewChoices)]
pub fn skew_choices_js(w: usize, mode: &str) -> Result<String, JsError> {
    choices(w, mode).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = sendBlock)]
pub fn send_block_js(
    w: usize,
    message: &str,
    mode: &str,
    sigmas: &[i8],
) -> Result<String, JsError> {
    send(w, message, mode, sigmas).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: Out) -> Value {
        serde_json::from_str(&s.unwrap()).unwrap()
    }

    #[test]
    fn curve_rows() {
        let v = parse(curve(10));
        assert_eq!(v["rows"].as_array().unwrap().len(), 10);
        assert_eq!(v["rows"][3]["capacity"], 0.75);
        assert_eq!(v["upper_at"], 10);
        assert!(curve(1).is_err());
        assert!(curve(CURVE_MAX_W + 1).is_err());
    }

    #[test]
    fn component_marks_even_offsets() {
        let v = parse(component(4, 2));
        assert_eq!(v["vertices"][2], "0,2");
        assert_eq!(v["edges"].as_array().unwrap().len(), 10);
        assert_eq!(v["codewords"], json!([0, 2, 5]));
        assert!(component(13, 2).is_err());
        assert!(component(4, 5).is_err());
    }

    #[test]
    fn choices_follow_mode() {
        assert_eq!(parse(choices(3, "binary")), json!([[1], [-1, 1], [-1]]));
        assert_eq!(parse(choices(1, "ternary")), json!([[0]]));
        assert!(choices(3, "quaternary").is_err());
    }

    #[test]
    fn send_round_trips() {
        let v = parse(send(5, "5", "binary", &[1, -1, 1, -1, -1]));
        assert_eq!(v["word"], "10010");
        assert_eq!(v["arrivals"], json!([3, 7]));
        assert_eq!(v["decoded"], "5");
        assert_eq!(v["ok"], true);
        assert_eq!(v["codebook_size"], "13");

        let big = parse(send(64, "17167680177565", "ternary", &[0; 64]));
        assert_eq!(big["decoded"], "17167680177565");

        assert!(send(5, "13", "binary", &[1, -1, 1, -1, -1]).is_err());
        assert!(send(5, "1", "binary", &[0, 0, 0, 0, 0]).is_err());
        assert!(send(5, "x", "binary", &[1, -1, 1, -1, -1]).is_err());
    }
}
