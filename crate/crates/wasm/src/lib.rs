//! Browser bindings: three interactive operations over the edgetangent
//! library, each taking and returning JSON strings so the page needs no
//! generated bindings beyond the function signatures.
//!
//! Build for the web with
//! `cargo build -p edgetangent-wasm --target wasm32-unknown-unknown --release`
//! followed by `wasm-bindgen --target web` (see www/index.html).

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use edgetangent::metrics::{
    circum_edge_ratio_sq, circumradius_sq_closed, edge_inradius_sq_closed, og_distance_sq,
    volume_sq_cm,
};
use edgetangent::verify::embed;
use edgetangent::{check_chain, BalloonRadii, Rational, Scalar, SimplexMetrics};

fn scalar_json<S: Scalar>(s: &S) -> Value {
    if S::EXACT {
        Value::String(s.to_string())
    } else {
        serde_json::Number::from_f64(s.to_f64())
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
}

fn error_json(detail: impl std::fmt::Display) -> String {
    json!({ "error": detail.to_string() }).to_string()
}

fn metrics_json<S: Scalar>(values: Vec<S>) -> Result<Value, String> {
    let radii = BalloonRadii::new(values).map_err(|e| e.to_string())?;
    let margin = radii.realizability().margin;
    let metrics = SimplexMetrics::compute(&radii).map_err(|e| e.to_string())?;
    let chain = check_chain(&radii).map_err(|e| e.to_string())?;
    Ok(json!({
        "backend": if S::EXACT { "exact" } else { "float" },
        "n": metrics.dim,
        "radii": radii.radii().iter().map(scalar_json).collect::<Vec<_>>(),
        "margin": scalar_json(&margin),
        "rho_sq": scalar_json(&metrics.edge_inradius_sq),
        "R_sq": scalar_json(&metrics.circumradius_sq),
        "V_sq": scalar_json(&metrics.volume_sq),
        "og_sq": scalar_json(&metrics.og_sq),
        "ratio_R_rho_sq": scalar_json(&metrics.ratio_sq),
        "r": metrics.inradius.as_ref().map(scalar_json).unwrap_or(Value::Null),
        "chain_lower_slack": scalar_json(&chain.chain_lower_slack),
        "chain_upper_slack": scalar_json(&chain.chain_upper_slack),
        "discriminant_slack": scalar_json(&chain.discriminant_slack),
        "euler_slack": chain.euler_slack.as_ref().map(scalar_json).unwrap_or(Value::Null),
        "edge_euler_slack": chain.edge_euler_slack.as_ref().map(scalar_json).unwrap_or(Value::Null),
        "route_delta": metrics.route_delta,
    }))
}

/// Full metric and inequality-chain report for balloon radii.
///
/// Input: `{"radii": [..], "backend": "exact"|"float"}` where radii entries
/// are numbers or "p/q" strings. Returns a JSON document, or
/// `{"error": ".."}`.
#[wasm_bindgen]
pub fn metrics_report(input: &str) -> String {
    let parsed: Value = match serde_json::from_str(input) {
        Ok(v) => v,
        Err(e) => return error_json(format!("invalid JSON: {e}")),
    };
    let Some(list) = parsed.get("radii").and_then(Value::as_array) else {
        return error_json("input needs a \"radii\" array");
    };
    let backend = parsed
        .get("backend")
        .and_then(Value::as_str)
        .unwrap_or("exact");

    let texts: Vec<String> = list
        .iter()
        .map(|v| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();

    let result = match backend {
        "float" => texts
            .iter()
            .map(|t| <f64 as Scalar>::parse(t).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()
            .and_then(metrics_json),
        _ => texts
            .iter()
            .map(|t| <Rational as Scalar>::parse(t).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()
            .and_then(metrics_json),
    };
    match result {
        Ok(doc) => doc.to_string(),
        Err(e) => error_json(e),
    }
}

/// Drawable scene for the triangle with balloon radii (x0, x1, x2): vertex
/// coordinates, the three mutually tangent balloon circles, the edge-tangent
/// (in)circle, the circumcircle, circumcenter and centroid.
#[wasm_bindgen]
pub fn triangle_scene(x0: f64, x1: f64, x2: f64) -> String {
    let radii = match BalloonRadii::new(vec![x0, x1, x2]) {
        Ok(r) => r,
        Err(e) => return error_json(e),
    };
    let edges = radii.edge_lengths();
    let points = match embed(&edges) {
        Ok(p) => p,
        Err(e) => return error_json(e),
    };
    let circumcenter = match points.circumcenter() {
        Ok(c) => c,
        Err(e) => return error_json(e),
    };
    let centroid = points.centroid();

    // The edge-tangent circle of a triangle is its incircle: center at the
    // side-length weighted vertex mean.
    let opposite = [
        *edges.length(1, 2),
        *edges.length(0, 2),
        *edges.length(0, 1),
    ];
    let perimeter: f64 = opposite.iter().sum();
    let mut incenter = [0.0f64; 2];
    for (i, w) in opposite.iter().enumerate() {
        incenter[0] += w * points.point(i)[0] / perimeter;
        incenter[1] += w * points.point(i)[1] / perimeter;
    }

    let sums = radii.symmetric_sums();
    let rho_sq = match edge_inradius_sq_closed(&sums) {
        Ok(v) => v,
        Err(e) => return error_json(e),
    };
    let circ_sq = match circumradius_sq_closed(&sums) {
        Ok(v) => v,
        Err(e) => return error_json(e),
    };
    let og_sq = og_distance_sq(&circ_sq, &edges).unwrap_or(0.0);

    json!({
        "vertices": (0..3).map(|i| points.point(i).to_vec()).collect::<Vec<_>>(),
        "balloons": (0..3).map(|i| json!({
            "center": points.point(i).to_vec(),
            "radius": radii.radius(i),
        })).collect::<Vec<_>>(),
        "edge_circle": { "center": incenter.to_vec(), "radius": rho_sq.sqrt() },
        "circumcircle": { "center": circumcenter, "radius": circ_sq.sqrt() },
        "centroid": centroid,
        "og": og_sq.max(0.0).sqrt(),
        "ratio_sq": circum_edge_ratio_sq(&sums),
    })
    .to_string()
}

/// Sweep the tetrahedron family (eps, x1, x2, x3) across its degeneracy
/// boundary: margin, squared volume and squared circumradius as functions of
/// eps, plus the boundary root eps_star where the margin vanishes.
#[wasm_bindgen]
pub fn boundary_sweep(x1: f64, x2: f64, x3: f64, steps: u32) -> String {
    if !(x1 > 0.0 && x2 > 0.0 && x3 > 0.0) {
        return error_json("radii must be positive");
    }
    let steps = steps.clamp(8, 4096);
    let recip_sum = 1.0 / x1 + 1.0 / x2 + 1.0 / x3;
    let recip_sq_sum = 1.0 / (x1 * x1) + 1.0 / (x2 * x2) + 1.0 / (x3 * x3);
    // Larger root of -t^2 + 2 recip_sum t + (recip_sum^2 - 2 recip_sq_sum)
    // in t = 1/eps.
    let inner = 2.0 * (recip_sum * recip_sum - recip_sq_sum);
    if inner <= 0.0 {
        return error_json("no degeneracy root for these radii");
    }
    let t_star = recip_sum + inner.sqrt();
    let eps_star = 1.0 / t_star;

    let lo = 0.05 * eps_star;
    let hi = 2.5 * eps_star;
    let mut rows = Vec::with_capacity(steps as usize);
    for i in 0..steps {
        let eps = lo + (hi - lo) * i as f64 / (steps - 1) as f64;
        let radii = BalloonRadii::new(vec![eps, x1, x2, x3]).expect("positive radii");
        let sums = radii.symmetric_sums();
        let margin = sums.recip_margin;
        let vol_sq = volume_sq_cm(&radii.edge_lengths());
        let circ_sq = circumradius_sq_closed(&sums).ok();
        rows.push(json!({
            "eps": eps,
            "margin": margin,
            "vol_sq": vol_sq,
            "R_sq": circ_sq,
        }));
    }
    json!({ "eps_star": eps_star, "rows": rows }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metrics_report_exact_anchors() {
        let doc: Value =
            serde_json::from_str(&metrics_report(r#"{"radii": ["1","2","3"]}"#)).unwrap();
        assert_eq!(doc["R_sq"], "25/4");
        assert_eq!(doc["rho_sq"], "1");
        assert_eq!(doc["V_sq"], "36");
        assert_eq!(doc["og_sq"], "25/36");
        assert_eq!(doc["chain_lower_slack"], "9/4");
        assert_eq!(doc["chain_upper_slack"], "4");
    }

    #[test]
    fn metrics_report_float_backend() {
        let doc: Value = serde_json::from_str(&metrics_report(
            r#"{"radii": [1, 1, 1, 1], "backend": "float"}"#,
        ))
        .unwrap();
        assert_eq!(doc["ratio_R_rho_sq"], 3.0);
        assert!((doc["r"].as_f64().unwrap() - 1.0 / 6.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn metrics_report_rejects_bad_input() {
        let doc: Value = serde_json::from_str(&metrics_report("{}")).unwrap();
        assert!(doc["error"].is_string());
        let doc: Value =
            serde_json::from_str(&metrics_report(r#"{"radii": ["1/10","1","1","1"]}"#)).unwrap();
        assert!(doc["error"].as_str().unwrap().contains("-37"));
    }

    #[test]
    fn triangle_scene_345() {
        let doc: Value = serde_json::from_str(&triangle_scene(1.0, 2.0, 3.0)).unwrap();
        assert!((doc["circumcircle"]["radius"].as_f64().unwrap() - 2.5).abs() < 1e-9);
        assert!((doc["edge_circle"]["radius"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        let verts = doc["vertices"].as_array().unwrap();
        assert_eq!(verts.len(), 3);
        let balloons = doc["balloons"].as_array().unwrap();
        assert_eq!(balloons[0]["radius"], 1.0);
        assert_eq!(balloons[1]["radius"], 2.0);
        // |OG| for the 3-4-5 triangle: sqrt(25/36) = 5/6.
        assert!((doc["og"].as_f64().unwrap() - 5.0 / 6.0).abs() < 1e-9);
    }

    #[test]
    fn boundary_sweep_crosses_zero_at_root() {
        let doc: Value = serde_json::from_str(&boundary_sweep(1.0, 1.0, 1.0, 64)).unwrap();
        let eps_star = doc["eps_star"].as_f64().unwrap();
        assert!((eps_star - (2.0 * 3.0f64.sqrt() - 3.0) / 3.0).abs() < 1e-12);
        let rows = doc["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 64);
        // Margin is negative well below the root and positive well above it.
        assert!(rows[0]["margin"].as_f64().unwrap() < 0.0);
        assert!(rows[63]["margin"].as_f64().unwrap() > 0.0);
        assert!(rows[0]["R_sq"].is_null());
        assert!(rows[63]["R_sq"].as_f64().unwrap() > 0.0);
    }
}
