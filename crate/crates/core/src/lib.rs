//! Metric invariants of circumscriptible (edge-tangent) n-simplices.
//!
//! An n-simplex is circumscriptible when a single sphere is tangent to all of
//! its n(n+1)/2 edges. Such simplices are exactly the ones parameterized by
//! positive balloon radii x_0..x_n with edge lengths a_ij = x_i + x_j. This
//! crate computes their metric invariants — squared edge-inradius,
//! circumradius, volume, facet inradius and circumcenter-centroid distance —
//! by independent routes (closed formulas in the radii, exact bordered
//! determinant quotients, a Cayley-Menger volume route, and a coordinate
//! embedding) and verifies the inequality chain
//! R >= sqrt(2n/(n-1)) * rho >= n * r on targeted and randomized instances.
//!
//! Everything is generic over [`Scalar`], with two backends: exact
//! arbitrary-precision rationals (all identities hold with zero tolerance)
//! and IEEE doubles (square roots available, comparisons at 1e-9 relative
//! tolerance).

// Index loops mirror the matrix subscripts they implement.
#![allow(clippy::needless_range_loop)]

pub mod matrix;
pub mod metrics;
pub mod scalar;
pub mod simplex;
pub mod structured;
pub mod verify;

pub use matrix::{MatrixError, SquareMatrix};
pub use metrics::{MetricsError, Route, SimplexMetrics};
pub use scalar::{NumericError, Rational, Scalar, FLOAT_ABS_TOL, FLOAT_REL_TOL};
pub use simplex::{
    BalloonRadii, CircumscriptibleFailure, EdgeLengthMatrix, Realizability, SimplexError,
    SymmetricSums,
};
pub use verify::{
    check_chain, check_proof_bounds, compare_backends, embed, random_radii, run_campaign,
    CampaignConfig, CampaignSummary, InstanceReport, PointConfiguration, Profile, VerifyError,
};
