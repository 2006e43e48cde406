//! Browser bindings. Every export takes and returns JSON text; failures come
//! back as `{"error": "..."}` rather than as exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use ipgap::bounds::{full_report, regime_comparisons, BoundOptions};
use ipgap::exact::IntegerMatrix;
use ipgap::geometry::cube_section_volume;
use ipgap::io::InstanceFile;

const MAX_SAMPLES: u64 = 5_000_000;

fn render(result: Result<Value, String>) -> String {
    let doc = result.unwrap_or_else(|e| json!({ "error": e }));
    serde_json::to_string_pretty(&doc).expect("JSON values serialize")
}

fn analyze_value(src: &str) -> Result<Value, String> {
    let file = InstanceFile::parse(src).map_err(|e| e.to_string())?;
    let inst = file.instance().map_err(|e| e.to_string())?;
    let opts = BoundOptions::default();
    let report = full_report(&inst, file.search_box().as_ref(), &opts).map_err(|e| e.to_string())?;
    serde_json::to_value(report).map_err(|e| e.to_string())
}

/// Full bound report for an instance file (`{"A": ..., "b": ..., "c": ...}`).
#[wasm_bindgen]
pub fn analyze(instance_json: &str) -> String {
    render(analyze_value(instance_json))
}

/// Rows of the exact regime comparison for `m = 1..=m_max`, `span` values of
/// `s` past each threshold.
#[wasm_bindgen]
pub fn regime_table(m_max: u32, span: u32) -> String {
    if !(1..=12).contains(&m_max) || span > 200 {
        return render(Err("need 1 <= m_max <= 12 and span <= 200".into()));
    }
    render(serde_json::to_value(regime_comparisons(1..=m_max, span)).map_err(|e| e.to_string()))
}

fn section_value(a_json: &str, half_width: f64, samples: u64, seed: u64) -> Result<Value, String> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(a_json).map_err(|e| format!("A: {e}"))?;
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err("half-width must be positive".into());
    }
    if samples == 0 || samples > MAX_SAMPLES {
        return Err(format!("samples must be between 1 and {MAX_SAMPLES}"));
    }
    let a = IntegerMatrix::from_rows(&rows).map_err(|e| e.to_string())?;
    let n = a.cols();
    let est = cube_section_volume(&a, &vec![half_width; n], samples, seed).map_err(|e| e.to_string())?;
    let k = n - ipgap::exact::rank(&a);
    Ok(json!({
        "dimension": k,
        "estimate": est.estimate,
        "sigma": est.sigma,
        "samples": est.samples,
        "hits": est.hits,
        "lower_bound": (2.0 * half_width).powi(k as i32),
    }))
}

/// Monte-Carlo volume of `ker(A) ∩ [-h, h]^n`, next to the lower bound
/// `(2h)^k` for central sections of dimension `k`.
#[wasm_bindgen]
pub fn section_volume(a_json: &str, half_width: f64, samples: u32, seed: u32) -> String {
    render(section_value(a_json, half_width, samples.into(), seed.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn analyze_knapsack() {
        let doc = parse(&analyze(r#"{"A": [[2, 3]], "b": [5], "c": [1, 0]}"#));
        assert_eq!(doc["gap"], "1");
        let doc = parse(&analyze(r#"{"A": [[2, 3]], "b": [5]}"#));
        assert!(doc["error"].is_string());
    }

    #[test]
    fn regime_rows() {
        let doc = parse(&regime_table(2, 3));
        assert_eq!(doc.as_array().unwrap().len(), 16);
        assert!(parse(&regime_table(0, 3))["error"].is_string());
    }

    #[test]
    fn square_diagonal_section() {
        // ker [1, -1] meets [-1, 1]^2 in a diagonal of length 2 sqrt 2
        let doc = parse(&section_volume("[[1, -1]]", 1.0, 100_000, 7));
        assert_eq!(doc["dimension"], 1);
        let est = doc["estimate"].as_f64().unwrap();
        assert!((est - 2.0 * 2f64.sqrt()).abs() < 1e-9, "{est}");
        assert!(parse(&section_volume("[[1, -1]]", -1.0, 10, 7))["error"].is_string());
    }
}
