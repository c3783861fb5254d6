//! Browser bindings for the demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function so the numerics can be
//! tested natively.

use fuzzy_antinorm::alphacut::AlphaNormFamily;
use fuzzy_antinorm::riesz::{self, Subspace};
use fuzzy_antinorm::{BaseNorm, DecayProfile, FuzzyAntiNorm, TConorm, VectorSpaceSpec};
use wasm_bindgen::prelude::*;

fn profile(kind: &str, param: f64) -> Result<DecayProfile, String> {
    let p = match kind {
        "reciprocal" => DecayProfile::reciprocal(param),
        "exponential" => DecayProfile::exponential(param),
        "step" => Ok(DecayProfile::Step),
        other => return Err(format!("unknown profile `{other}`")),
    };
    p.map_err(|e| e.to_string())
}

fn plane(kind: &str, param: f64) -> Result<FuzzyAntiNorm, String> {
    let space = VectorSpaceSpec::new(2, BaseNorm::Euclidean).map_err(|e| e.to_string())?;
    FuzzyAntiNorm::new(space, profile(kind, param)?, TConorm::Maximum).map_err(|e| e.to_string())
}

/// `ν(x, t)` for `‖x‖ = norm` at `t = t_max·i/(points-1)`.
pub fn membership_values(kind: &str, param: f64, norm: f64, t_max: f64, points: usize) -> Result<Vec<f64>, String> {
    if !(norm >= 0.0 && t_max > 0.0 && points >= 2) {
        return Err("need norm >= 0, t_max > 0 and at least two points".into());
    }
    let nu = plane(kind, param)?;
    Ok((0..points)
        .map(|i| nu.membership_at_norm(norm, t_max * i as f64 / (points - 1) as f64))
        .collect())
}

/// `‖x‖*_α` for `‖x‖ = norm` at `α = (i+1)/(points+1)`; infinite values come
/// back as `f64::INFINITY`.
pub fn alpha_norm_values(kind: &str, param: f64, norm: f64, points: usize) -> Result<Vec<f64>, String> {
    if !(norm >= 0.0 && points >= 1) {
        return Err("need norm >= 0 and at least one point".into());
    }
    let family = AlphaNormFamily::new(plane(kind, param)?);
    let x = [norm, 0.0];
    (0..points)
        .map(|i| {
            let a = (i + 1) as f64 / (points + 1) as f64;
            family
                .norm(&x, a)
                .map(|v| v.finite().unwrap_or(f64::INFINITY))
                .map_err(|e| e.to_string())
        })
        .collect()
}

/// Riesz witness in the plane for the line through the origin at `angle`.
///
/// Returns `[y₀, y₁, ‖y‖*_α, ν(y, 1), min ‖y - w‖*_α, passed]` with
/// `passed` as 0 or 1.
pub fn riesz_values(kind: &str, param: f64, alpha: f64, eps: f64, angle: f64) -> Result<Vec<f64>, String> {
    let nu = plane(kind, param)?;
    let w = Subspace::new(2, vec![vec![angle.cos(), angle.sin()]]).map_err(|e| e.to_string())?;
    let wit = riesz::riesz_witness(&nu, alpha, &w, eps).map_err(|e| e.to_string())?;
    let r = riesz::verify_witness(&nu, alpha, eps, &wit.y, &w, 2000, 0).map_err(|e| e.to_string())?;
    Ok(vec![
        wit.y[0],
        wit.y[1],
        r.unit_norm,
        r.membership_at_one,
        r.min_alpha_distance,
        if r.passed { 1.0 } else { 0.0 },
    ])
}

#[wasm_bindgen]
pub fn membership_curve(kind: &str, param: f64, norm: f64, t_max: f64, points: usize) -> Result<Vec<f64>, JsValue> {
    membership_values(kind, param, norm, t_max, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn alpha_norm_curve(kind: &str, param: f64, norm: f64, points: usize) -> Result<Vec<f64>, JsValue> {
    alpha_norm_values(kind, param, norm, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn riesz_demo(kind: &str, param: f64, alpha: f64, eps: f64, angle: f64) -> Result<Vec<f64>, JsValue> {
    riesz_values(kind, param, alpha, eps, angle).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_starts_at_one_and_decays() {
        let v = membership_values("reciprocal", 1.0, 2.0, 10.0, 11).unwrap();
        assert_eq!(v[0], 1.0);
        assert!(v.windows(2).skip(1).all(|w| w[1] <= w[0]));
        // k‖x‖ / (t + k‖x‖) is 1/2 at t = 2, ‖x‖ = 2, k = 1
        assert!((v[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn alpha_norms_ascend() {
        let v = alpha_norm_values("exponential", 2.0, 1.5, 20).unwrap();
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
        let s = alpha_norm_values("step", 0.0, 1.5, 5).unwrap();
        assert!(s.iter().all(|x| *x == 1.5));
    }

    #[test]
    fn riesz_witness_in_the_plane() {
        let r = riesz_values("reciprocal", 1.0, 0.5, 0.1, 0.7).unwrap();
        assert!((r[2] - 1.0).abs() < 1e-8);
        assert_eq!(r[5], 1.0);
        // y is orthogonal to the line
        assert!((r[0] * 0.7f64.cos() + r[1] * 0.7f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(membership_values("cubic", 1.0, 1.0, 1.0, 3).is_err());
        assert!(alpha_norm_values("reciprocal", -1.0, 1.0, 3).is_err());
        assert!(riesz_values("step", 0.0, 0.5, 0.1, 0.0).is_err());
    }
}
