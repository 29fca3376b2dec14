//! Output documents. JSON keys are a fixed, documented set per command;
//! exact-backend scalars serialize as "p/q" strings, float-backend scalars as
//! JSON numbers. CSV uses a header row and "." as the decimal separator, with
//! no locale dependence anywhere.

use serde_json::{json, Value};

use edgetangent::verify::CampaignSummary;
use edgetangent::{Scalar, SimplexMetrics};

/// Backend-faithful JSON value for one scalar.
pub fn scalar_json<S: Scalar>(s: &S) -> Value {
    if S::EXACT {
        Value::String(s.to_string())
    } else {
        serde_json::Number::from_f64(s.to_f64())
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
}

fn backend_name<S: Scalar>() -> &'static str {
    if S::EXACT {
        "exact"
    } else {
        "float"
    }
}

pub fn metrics_document<S: Scalar>(
    radii: &edgetangent::BalloonRadii<S>,
    margin: &S,
    metrics: &SimplexMetrics<S>,
) -> Value {
    json!({
        "backend": backend_name::<S>(),
        "n": metrics.dim,
        "radii": radii.radii().iter().map(scalar_json).collect::<Vec<_>>(),
        "realizable": true,
        "margin": scalar_json(margin),
        "rho_sq": scalar_json(&metrics.edge_inradius_sq),
        "R_sq": scalar_json(&metrics.circumradius_sq),
        "V_sq": scalar_json(&metrics.volume_sq),
        "og_sq": scalar_json(&metrics.og_sq),
        "ratio_R_rho_sq": scalar_json(&metrics.ratio_sq),
        "r": metrics.inradius.as_ref().map(scalar_json).unwrap_or(Value::Null),
        "routes": {
            "rho_sq": metrics.edge_inradius_route.as_str(),
            "R_sq": metrics.circumradius_route.as_str(),
            "V_sq": metrics.volume_route.as_str(),
        },
        "route_delta": metrics.route_delta,
    })
}

pub struct ValidateDocument<S> {
    pub dim: usize,
    pub circumscriptible: bool,
    pub radii: Option<Vec<S>>,
    pub diagnostic: Option<String>,
    pub realizable: Option<bool>,
    pub margin: Option<S>,
    /// Raw Cayley-Menger determinant of the edge set.
    pub cm_det: S,
    /// Sign of (-1)^(n+1) cm_det: +1 for realizable-oriented, 0 flat, -1 not
    /// realizable.
    pub cm_sign: i32,
}

pub fn validate_document<S: Scalar>(doc: &ValidateDocument<S>) -> Value {
    json!({
        "backend": backend_name::<S>(),
        "n": doc.dim,
        "circumscriptible": doc.circumscriptible,
        "radii": doc.radii.as_ref()
            .map(|r| Value::Array(r.iter().map(scalar_json).collect()))
            .unwrap_or(Value::Null),
        "diagnostic": doc.diagnostic.clone().map(Value::String).unwrap_or(Value::Null),
        "realizable": doc.realizable.map(Value::Bool).unwrap_or(Value::Null),
        "margin": doc.margin.as_ref().map(scalar_json).unwrap_or(Value::Null),
        "cm_det": scalar_json(&doc.cm_det),
        "cm_sign": doc.cm_sign,
    })
}

pub fn error_document(kind: &str, detail: &str) -> Value {
    json!({
        "error": { "kind": kind, "detail": detail },
    })
}

/// Flatten a JSON document into key,value CSV rows (arrays and objects are
/// flattened with dotted paths).
pub fn to_key_value_csv(doc: &Value) -> String {
    fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
        match value {
            Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    flatten(&key, v, rows);
                }
            }
            Value::Array(items) => {
                for (i, v) in items.iter().enumerate() {
                    flatten(&format!("{prefix}.{i}"), v, rows);
                }
            }
            Value::Null => rows.push((prefix.to_string(), String::new())),
            Value::String(s) => rows.push((prefix.to_string(), s.clone())),
            other => rows.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    flatten("", doc, &mut rows);
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        out.push_str(&csv_escape(&k));
        out.push(',');
        out.push_str(&csv_escape(&v));
        out.push('\n');
    }
    out
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn campaign_csv(summary: &CampaignSummary) -> String {
    let mut out = String::from(
        "dim,instances,rejections,violations,ill_conditioned,min_margin,\
         min_chain_lower_slack,min_chain_upper_slack,min_discriminant_slack,\
         min_euler_slack,min_edge_euler_slack,max_oracle_delta\n",
    );
    for d in &summary.per_dim {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            d.dim,
            d.instances,
            d.rejections,
            d.violations,
            d.ill_conditioned,
            csv_escape(&d.min_margin),
            csv_escape(&d.min_chain_lower_slack),
            csv_escape(&d.min_chain_upper_slack),
            csv_escape(&d.min_discriminant_slack),
            csv_escape(&opt(&d.min_euler_slack)),
            csv_escape(&opt(&d.min_edge_euler_slack)),
            csv_escape(&opt(&d.max_oracle_delta)),
        ));
    }
    out
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub route: &'static str,
    pub median_ns: u128,
    pub max_bits: u64,
    pub det: String,
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,route,median_ns,max_bits,det\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            r.route,
            r.median_ns,
            r.max_bits,
            csv_escape(&r.det)
        ));
    }
    out
}

pub fn bench_json(rows: &[BenchRow]) -> Value {
    json!({ "rows": rows })
}
