//! Browser bindings for the separability screens: analyze one state,
//! trace a norm curve over a parameter, and expose the realigned matrix
//! as a heatmap. Inputs arrive as the same flat key=value text the CLI
//! and file formats use; outputs are flat text or number arrays so the
//! page needs no JSON layer.
//!
//! The `*_text`/`*_values` functions carry the logic and compile on every
//! target; the `#[wasm_bindgen]` wrappers only translate errors.

use wasm_bindgen::prelude::*;

use sepscope::criteria::full_report;
use sepscope::io::{parse_state_spec, sig12};
use sepscope::realign::realign_row;
use sepscope::states::StateSpec;

fn build(spec_text: &str) -> Result<(StateSpec, sepscope::criteria::DensityMatrix), String> {
    let spec = parse_state_spec(spec_text).map_err(|e| e.to_string())?;
    let rho = spec.build().map_err(|e| e.to_string())?;
    Ok((spec, rho))
}

/// Full report as key=value lines (same vocabulary as the CSV header).
pub fn analyze_text(spec_text: &str) -> Result<String, String> {
    let (spec, rho) = build(spec_text)?;
    let report = full_report(&rho).map_err(|e| e.to_string())?;
    let dims = rho.dims();
    Ok(format!(
        "family={}\ndim_a={}\ndim_b={}\nrealign_trace_norm={}\nccn={}\nppt_min_eig={}\nsymmetric={}\nrccn_verdict={}\nppt_verdict={}\n",
        spec.family,
        dims.dim_a(),
        dims.dim_b(),
        sig12(report.realignment_trace_norm),
        sig12(report.ccn),
        sig12(report.ppt_min_eigenvalue),
        report.is_symmetric,
        report.rccn_verdict,
        report.ppt_verdict,
    ))
}

/// Flat [x, realignment norm, min partial-transpose eigenvalue] triples
/// over an n-point grid of `param`. Points whose state cannot be built
/// (parameter leaves its domain) carry NaNs so a plot can gap there.
pub fn curve_values(
    spec_text: &str,
    param: &str,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<f64>, String> {
    if n < 2 {
        return Err("curve needs at least 2 points".into());
    }
    // The template omits the swept parameter, so it is parsed, not built.
    let template = parse_state_spec(spec_text).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(3 * n);
    for i in 0..n {
        let x = lo + (hi - lo) * (i as f64) / ((n - 1) as f64);
        let mut spec = template.clone();
        let point = spec
            .assign(param, x)
            .map_err(|e| e.to_string())
            .and_then(|_| spec.build().map_err(|e| e.to_string()))
            .and_then(|rho| full_report(&rho).map_err(|e| e.to_string()));
        match point {
            Ok(report) => {
                out.push(x);
                out.push(report.realignment_trace_norm);
                out.push(report.ppt_min_eigenvalue);
            }
            Err(_) => {
                out.push(x);
                out.push(f64::NAN);
                out.push(f64::NAN);
            }
        }
    }
    Ok(out)
}

/// Entry magnitudes of the realigned matrix, prefixed by its shape:
/// [rows, cols, |z_00|, |z_01|, ...] in row-major order.
pub fn heatmap_values(spec_text: &str) -> Result<Vec<f64>, String> {
    let (_, rho) = build(spec_text)?;
    let realigned = realign_row(rho.matrix(), rho.dims()).map_err(|e| e.to_string())?;
    let m = &realigned.matrix;
    let mut out = Vec::with_capacity(2 + m.rows() * m.cols());
    out.push(m.rows() as f64);
    out.push(m.cols() as f64);
    out.extend(m.data().iter().map(|z| z.norm()));
    Ok(out)
}

#[wasm_bindgen]
pub fn analyze(spec_text: &str) -> Result<String, JsValue> {
    analyze_text(spec_text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn curve(spec_text: &str, param: &str, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, JsValue> {
    curve_values(spec_text, param, lo, hi, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn heatmap(spec_text: &str) -> Result<Vec<f64>, JsValue> {
    heatmap_values(spec_text).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_reports_known_values() {
        let text = analyze_text("family=rho_alpha\nalpha=4\ndim=4\n").unwrap();
        assert!(text.contains("realign_trace_norm=1.15673822010e0"), "{text}");
        assert!(text.contains("rccn_verdict=entangled"), "{text}");
        assert!(text.contains("ppt_verdict=inconclusive"), "{text}");
        assert!(analyze_text("family=nope\n").is_err());
    }

    #[test]
    fn curve_tracks_the_closed_form_and_gaps_cleanly() {
        let points = curve_values("family=werner_mc\nm=3\ndim=3\n", "c", -1.0, 1.0, 5).unwrap();
        assert_eq!(points.len(), 15);
        for chunk in points.chunks(3) {
            let expected = sepscope::states::werner_trace_norm(3, chunk[0]);
            assert!((chunk[1] - expected).abs() <= 1e-10);
        }
        // Out-of-domain points are NaN, in-domain points are not.
        let points = curve_values("family=rho_alpha\ndim=4\n", "alpha", 4.0, 6.0, 3).unwrap();
        assert!(!points[1].is_nan() && !points[4].is_nan());
        assert!(points[7].is_nan(), "alpha=6 is outside the family domain");
    }

    #[test]
    fn heatmap_has_the_realigned_shape() {
        let values = heatmap_values("family=werner_mc\nm=3\nc=-0.5\ndim=3\n").unwrap();
        assert_eq!(values[0], 9.0);
        assert_eq!(values[1], 9.0);
        assert_eq!(values.len(), 2 + 81);
        assert!(values[2..].iter().all(|v| v.is_finite() && *v >= 0.0));
    }
}
