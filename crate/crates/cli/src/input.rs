//! Input loading: inline radii lists and JSON files carrying either balloon
//! radii or an edge matrix.
//!
//! Accepted file schema: `{"n": <int>, "radii": [..]}` or
//! `{"n": <int>, "edges": [[..], ..]}`. Scalars may be JSON numbers or
//! `"p/q"` strings; on the exact backend decimal numbers map to the exact
//! value of their binary rounding so both backends read identical inputs.

use std::path::Path;

use serde_json::Value;

use edgetangent::{BalloonRadii, EdgeLengthMatrix, Scalar, SimplexError};

use crate::CliError;

pub enum ParsedInput<S> {
    Radii(BalloonRadii<S>),
    Edges(EdgeLengthMatrix<S>),
}

pub fn scalar_from_json<S: Scalar>(value: &Value) -> Result<S, CliError> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => {
            return Err(CliError::malformed(format!(
                "expected a number or \"p/q\" string, got {other}"
            )))
        }
    };
    S::parse(&text).map_err(|e| CliError::malformed(format!("bad scalar {text:?}: {e}")))
}

fn parse_inline_radii<S: Scalar>(list: &str) -> Result<BalloonRadii<S>, CliError> {
    let values = list
        .split(',')
        .map(|part| {
            S::parse(part.trim())
                .map_err(|e| CliError::malformed(format!("bad radius {part:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    BalloonRadii::new(values).map_err(from_construction)
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::malformed(format!("invalid JSON in {}: {e}", path.display())))
}

fn parse_file<S: Scalar>(path: &Path) -> Result<ParsedInput<S>, CliError> {
    let doc = read_json(path)?;
    let object = doc
        .as_object()
        .ok_or_else(|| CliError::malformed("input document must be a JSON object"))?;
    let dim = object
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::malformed("input document needs an integer field \"n\""))?
        as usize;

    match (object.get("radii"), object.get("edges")) {
        (Some(_), Some(_)) => Err(CliError::malformed(
            "input document must carry either \"radii\" or \"edges\", not both",
        )),
        (Some(radii), None) => {
            let list = radii
                .as_array()
                .ok_or_else(|| CliError::malformed("\"radii\" must be an array"))?;
            if list.len() != dim + 1 {
                return Err(CliError::malformed(format!(
                    "\"radii\" has {} entries but n = {dim} needs {}",
                    list.len(),
                    dim + 1
                )));
            }
            let values = list
                .iter()
                .map(scalar_from_json::<S>)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ParsedInput::Radii(
                BalloonRadii::new(values).map_err(from_construction)?,
            ))
        }
        (None, Some(edges)) => {
            let rows = edges
                .as_array()
                .ok_or_else(|| CliError::malformed("\"edges\" must be an array of rows"))?;
            if rows.len() != dim + 1 {
                return Err(CliError::malformed(format!(
                    "\"edges\" has {} rows but n = {dim} needs {}",
                    rows.len(),
                    dim + 1
                )));
            }
            let mut matrix = Vec::with_capacity(rows.len());
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| CliError::malformed("each edge row must be an array"))?;
                matrix.push(
                    row.iter()
                        .map(scalar_from_json::<S>)
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            Ok(ParsedInput::Edges(
                EdgeLengthMatrix::new(matrix).map_err(from_construction)?,
            ))
        }
        (None, None) => Err(CliError::malformed(
            "input document needs a \"radii\" or \"edges\" field",
        )),
    }
}

/// Construction failures of the domain types are malformed input at the CLI
/// boundary, except non-circumscriptibility, which is a domain rejection.
fn from_construction(err: SimplexError) -> CliError {
    match err {
        SimplexError::NotCircumscriptible(f) => CliError::not_circumscriptible(f.to_string()),
        other => CliError::malformed(other.to_string()),
    }
}

/// Resolve exactly one input source.
pub fn load_input<S: Scalar>(
    radii: Option<&str>,
    edges: Option<&Path>,
    input: Option<&Path>,
) -> Result<ParsedInput<S>, CliError> {
    match (radii, edges, input) {
        (Some(list), None, None) => Ok(ParsedInput::Radii(parse_inline_radii(list)?)),
        (None, Some(path), None) => match parse_file::<S>(path)? {
            ParsedInput::Edges(e) => Ok(ParsedInput::Edges(e)),
            ParsedInput::Radii(_) => Err(CliError::malformed(
                "--edges file must carry an \"edges\" field",
            )),
        },
        (None, None, Some(path)) => parse_file(path),
        _ => Err(CliError::malformed(
            "provide exactly one of --radii, --edges or --input",
        )),
    }
}

/// Parse a dimension specification: "3", "2..8" (inclusive), "2..=8" or a
/// comma list "2,4,6".
pub fn parse_dims(text: &str) -> Result<Vec<usize>, CliError> {
    let text = text.trim();
    let parse_one = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| CliError::malformed(format!("bad dimension {s:?}")))
    };
    let dims: Vec<usize> = if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (parse_one(lo)?, parse_one(hi)?);
        if lo > hi {
            return Err(CliError::malformed(format!("empty dimension range {text:?}")));
        }
        (lo..=hi).collect()
    } else if text.contains(',') {
        text.split(',').map(parse_one).collect::<Result<_, _>>()?
    } else {
        vec![parse_one(text)?]
    };
    if let Some(&bad) = dims.iter().find(|&&d| d < 2) {
        return Err(CliError::malformed(format!(
            "dimension {bad} is below 2; simplices start at n = 2"
        )));
    }
    Ok(dims)
}
