//! Scalar invariants of a circumscriptible simplex, each computed by at least
//! two independent routes.
//!
//! Squared quantities stay inside the scalar field, so on the exact backend
//! every route-agreement check is an exact equality. The only unsquared
//! metric is the facet inradius r, which needs square roots and therefore
//! exists on the float backend only.

use thiserror::Error;

use crate::matrix::SquareMatrix;
use crate::scalar::{factorial, pow, sign_pow, NumericError, Scalar, FLOAT_ABS_TOL, FLOAT_REL_TOL};
use crate::simplex::{BalloonRadii, EdgeLengthMatrix, SimplexError, SymmetricSums};
use crate::structured::{
    balloon_matrix, bordered, cayley_menger, squared_edge_matrix, squared_edge_matrix_of,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    /// The realizability margin is non-positive: no simplex with these radii.
    #[error("not realizable: margin {margin} is not positive")]
    NotRealizable { margin: String },
    /// A bordered determinant in a quotient denominator vanished.
    #[error("degenerate bordered determinant")]
    DegenerateBorder,
    /// The simplex is flat (or the edge set is not realizable): volume is zero
    /// or negative where a positive volume is required.
    #[error("degenerate simplex: squared volume {0} is not positive")]
    DegenerateSimplex(String),
    /// The squared circumcenter-centroid distance came out negative beyond
    /// tolerance, which signals inconsistent inputs.
    #[error("squared center distance {value} is negative")]
    NegativeOg { value: String },
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
}

/// Which computation produced a metric value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Closed,
    Determinant,
    BothAgree,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Closed => "closed",
            Route::Determinant => "determinant",
            Route::BothAgree => "both-agree",
        }
    }
}

/// Squared edge-inradius from the symmetric sums: 2(n-1) / recip_margin.
pub fn edge_inradius_sq_closed<S: Scalar>(sums: &SymmetricSums<S>) -> Result<S, MetricsError> {
    if !sums.recip_margin.is_positive() {
        return Err(MetricsError::NotRealizable {
            margin: sums.recip_margin.to_string(),
        });
    }
    Ok(S::from_int(2 * (sums.dim as i64 - 1)) / sums.recip_margin.clone())
}

/// Squared edge-inradius as a bordered determinant quotient:
/// -|balloon| / (2 |bordered balloon|).
pub fn edge_inradius_sq_det<S: Scalar>(radii: &BalloonRadii<S>) -> Result<S, MetricsError> {
    let inner = balloon_matrix(radii);
    let det_bordered = bordered(&inner).determinant();
    if det_bordered.is_zero() {
        return Err(MetricsError::DegenerateBorder);
    }
    Ok(-inner.determinant() / (S::from_int(2) * det_bordered))
}

/// Squared circumradius from the symmetric sums:
/// discriminant / (8(n-1) * recip_margin).
pub fn circumradius_sq_closed<S: Scalar>(sums: &SymmetricSums<S>) -> Result<S, MetricsError> {
    if !sums.recip_margin.is_positive() {
        return Err(MetricsError::NotRealizable {
            margin: sums.recip_margin.to_string(),
        });
    }
    let denom = S::from_int(8 * (sums.dim as i64 - 1)) * sums.recip_margin.clone();
    Ok(sums.discriminant() / denom)
}

/// Squared circumradius as a bordered determinant quotient:
/// -|squared edge| / (2 |bordered squared edge|).
pub fn circumradius_sq_det<S: Scalar>(radii: &BalloonRadii<S>) -> Result<S, MetricsError> {
    let inner = squared_edge_matrix(radii);
    let det_bordered = bordered(&inner).determinant();
    if det_bordered.is_zero() {
        return Err(MetricsError::DegenerateBorder);
    }
    Ok(-inner.determinant() / (S::from_int(2) * det_bordered))
}

/// Squared circumradius-to-edge-inradius ratio:
/// discriminant / (16 (n-1)^2). Equals 2n/(n-1) exactly for equal radii.
pub fn circum_edge_ratio_sq<S: Scalar>(sums: &SymmetricSums<S>) -> S {
    let nm1 = sums.dim as i64 - 1;
    sums.discriminant() / S::from_int(16 * nm1 * nm1)
}

/// Squared volume in terms of the balloon radii and the squared
/// edge-inradius: 2^n (n-1) (prod x_i)^2 / ((n!)^2 rho^2).
pub fn volume_sq_from_radii<S: Scalar>(
    radii: &BalloonRadii<S>,
    edge_inradius_sq: &S,
) -> Result<S, MetricsError> {
    if !edge_inradius_sq.is_positive() {
        return Err(MetricsError::DegenerateSimplex(edge_inradius_sq.to_string()));
    }
    let n = radii.dim();
    let prod = radii.product();
    let fact = factorial::<S>(n);
    Ok(pow(&S::from_int(2), n as u32) * S::from_int(n as i64 - 1) * prod.clone() * prod
        / (fact.clone() * fact * edge_inradius_sq.clone()))
}

/// Squared volume from the Cayley-Menger determinant:
/// (-1)^(n+1) |CM| / (2^n (n!)^2).
///
/// The bordered squared-edge determinant equals (-1)^(n+1) 2^n (n!)^2 V^2:
/// divide the volume-circumradius determinant identity
/// (n!)^2 V^2 R^2 = (-1)^n |squared edge| / 2^(n+1) by the quotient form
/// R^2 = -|squared edge| / (2 |bordered squared edge|) and the |squared edge|
/// factors cancel. Zero signals a flat configuration; a negative value
/// signals an edge set realizable in no Euclidean space.
pub fn volume_sq_cm<S: Scalar>(edges: &EdgeLengthMatrix<S>) -> S {
    let n = edges.dim();
    let det = cayley_menger(edges).determinant();
    let fact = factorial::<S>(n);
    sign_pow::<S>(n + 1) * det / (pow(&S::from_int(2), n as u32) * fact.clone() * fact)
}

/// Third, radii-free route to the squared circumradius:
/// (-1)^n |squared edge| / (2^(n+1) (n!)^2 V^2) with V^2 from the
/// Cayley-Menger route.
pub fn circumradius_sq_vol<S: Scalar>(edges: &EdgeLengthMatrix<S>) -> Result<S, MetricsError> {
    let vol_sq = volume_sq_cm(edges);
    if !vol_sq.is_positive() {
        return Err(MetricsError::DegenerateSimplex(vol_sq.to_string()));
    }
    let n = edges.dim();
    let det = squared_edge_matrix_of(edges).determinant();
    let fact = factorial::<S>(n);
    Ok(sign_pow::<S>(n) * det
        / (pow(&S::from_int(2), (n + 1) as u32) * fact.clone() * fact * vol_sq))
}

/// Squared (m-dimensional) volume of the facet obtained by omitting one
/// vertex, via the Cayley-Menger determinant of the remaining vertices.
fn facet_volume_sq<S: Scalar>(edges: &EdgeLengthMatrix<S>, omit: usize) -> S {
    let verts: Vec<usize> = (0..edges.vertex_count()).filter(|&v| v != omit).collect();
    let m = verts.len() - 1;
    let cm = SquareMatrix::from_fn(verts.len() + 1, |i, j| match (i, j) {
        (0, 0) => S::zero(),
        (0, _) | (_, 0) => S::one(),
        _ => {
            let a = edges.length(verts[i - 1], verts[j - 1]).clone();
            a.clone() * a
        }
    });
    let fact = factorial::<S>(m);
    sign_pow::<S>(m + 1) * cm.determinant() / (pow(&S::from_int(2), m as u32) * fact.clone() * fact)
}

/// Facet-tangent inradius r = n V / (sum of facet volumes).
///
/// Requires square roots, so this is effectively float-backend only; the
/// exact backend reports the square-root error.
pub fn inradius<S: Scalar>(edges: &EdgeLengthMatrix<S>) -> Result<S, MetricsError> {
    let vol_sq = volume_sq_cm(edges);
    if !vol_sq.is_positive() {
        return Err(MetricsError::DegenerateSimplex(vol_sq.to_string()));
    }
    let vol = vol_sq.try_sqrt()?;
    let mut facet_sum = S::zero();
    for omit in 0..edges.vertex_count() {
        let fv_sq = facet_volume_sq(edges, omit);
        if !fv_sq.is_positive() {
            return Err(MetricsError::DegenerateSimplex(fv_sq.to_string()));
        }
        facet_sum = facet_sum + fv_sq.try_sqrt()?;
    }
    Ok(S::from_int(edges.dim() as i64) * vol / facet_sum)
}

/// Squared circumcenter-centroid distance:
/// R^2 - (sum of squared edges) / (n+1)^2.
///
/// A result below zero beyond tolerance reports an error; float round-off
/// within tolerance clamps to zero.
pub fn og_distance_sq<S: Scalar>(
    circumradius_sq: &S,
    edges: &EdgeLengthMatrix<S>,
) -> Result<S, MetricsError> {
    let n1 = edges.dim() as i64 + 1;
    let og = circumradius_sq.clone() - edges.sum_squared() / S::from_int(n1 * n1);
    if og.is_negative() {
        if S::EXACT {
            return Err(MetricsError::NegativeOg {
                value: og.to_string(),
            });
        }
        let bound = FLOAT_ABS_TOL + FLOAT_REL_TOL * circumradius_sq.to_f64().abs();
        if og.to_f64() < -bound {
            return Err(MetricsError::NegativeOg {
                value: og.to_string(),
            });
        }
        return Ok(S::zero());
    }
    Ok(og)
}

/// All metric invariants of one simplex with per-field route provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexMetrics<S> {
    pub dim: usize,
    pub edge_inradius_sq: S,
    pub circumradius_sq: S,
    pub volume_sq: S,
    pub og_sq: S,
    pub ratio_sq: S,
    /// Facet inradius; float backend only.
    pub inradius: Option<S>,
    pub edge_inradius_route: Route,
    pub circumradius_route: Route,
    pub volume_route: Route,
    /// Largest relative disagreement observed between routes (0 when all
    /// routes agree exactly).
    pub route_delta: f64,
}

fn rel_delta<S: Scalar>(a: &S, b: &S) -> f64 {
    if a == b {
        return 0.0;
    }
    let (af, bf) = (a.to_f64(), b.to_f64());
    (af - bf).abs() / af.abs().max(bf.abs()).max(1.0)
}

fn routes_agree<S: Scalar>(values: &[&S]) -> (Route, f64) {
    let mut delta = 0.0f64;
    let mut agree = true;
    for v in &values[1..] {
        delta = delta.max(rel_delta(values[0], v));
        let same = if S::EXACT {
            values[0] == *v
        } else {
            values[0].approx_eq(v, FLOAT_REL_TOL)
        };
        agree &= same;
    }
    (if agree { Route::BothAgree } else { Route::Closed }, delta)
}

impl<S: Scalar> SimplexMetrics<S> {
    /// Compute every invariant by every available route and record agreement.
    pub fn compute(radii: &BalloonRadii<S>) -> Result<Self, MetricsError> {
        let sums = radii.symmetric_sums();
        let edges = radii.edge_lengths();

        let rho_closed = edge_inradius_sq_closed(&sums)?;
        let rho_det = edge_inradius_sq_det(radii)?;
        let circ_closed = circumradius_sq_closed(&sums)?;
        let circ_det = circumradius_sq_det(radii)?;
        let circ_vol = circumradius_sq_vol(&edges)?;
        let vol_radii = volume_sq_from_radii(radii, &rho_closed)?;
        let vol_cm = volume_sq_cm(&edges);
        let ratio_sq = circum_edge_ratio_sq(&sums);
        let og_sq = og_distance_sq(&circ_closed, &edges)?;
        let inradius = match inradius(&edges) {
            Ok(r) => Some(r),
            Err(MetricsError::Numeric(NumericError::ExactSqrt)) => None,
            Err(e) => return Err(e),
        };

        let (edge_inradius_route, d1) = routes_agree::<S>(&[&rho_closed, &rho_det]);
        let (circumradius_route, d2) = routes_agree::<S>(&[&circ_closed, &circ_det, &circ_vol]);
        let (volume_route, d3) = routes_agree::<S>(&[&vol_radii, &vol_cm]);

        Ok(Self {
            dim: radii.dim(),
            edge_inradius_sq: rho_closed,
            circumradius_sq: circ_closed,
            volume_sq: vol_radii,
            og_sq,
            ratio_sq,
            inradius,
            edge_inradius_route,
            circumradius_route,
            volume_route,
            route_delta: d1.max(d2).max(d3),
        })
    }
}
