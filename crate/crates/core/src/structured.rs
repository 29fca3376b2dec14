//! Constructors for the structured matrices behind the determinant-quotient
//! metric formulas, plus their closed-form determinants and inverse.
//!
//! Two matrices are attached to a circumscriptible simplex with balloon radii
//! x_i: the balloon product matrix (diagonal -2*x_i^2, off-diagonal 2*x_i*x_j)
//! whose bordered quotient gives the squared edge-inradius, and the squared
//! edge matrix ((x_i+x_j)^2 off the diagonal) whose bordered quotient gives
//! the squared circumradius. Bordering prepends a row and column of ones with
//! a zero corner; the bordered squared-edge matrix of a general edge set is
//! the Cayley-Menger matrix.
//!
//! The closed forms below are verified against the fraction-free determinant
//! kernel rather than re-deriving any elimination sequence: exact numeric
//! equality on randomized rational instances is a stronger check than
//! replaying row operations.

use crate::matrix::SquareMatrix;
use crate::scalar::{pow, sign_pow, Scalar};
use crate::simplex::{BalloonRadii, EdgeLengthMatrix};

/// Which structured matrix a given order refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuredKind {
    /// Balloon product matrix; order n+1.
    Balloon,
    /// Bordered balloon product matrix; order n+2.
    BalloonBordered,
    /// Squared edge matrix; order n+1.
    SquaredEdge,
    /// Bordered squared edge matrix; order n+2.
    SquaredEdgeBordered,
    /// Cayley-Menger matrix of a general edge set; order n+2.
    CayleyMenger,
}

impl StructuredKind {
    pub fn order(self, dim: usize) -> usize {
        match self {
            StructuredKind::Balloon | StructuredKind::SquaredEdge => dim + 1,
            StructuredKind::BalloonBordered
            | StructuredKind::SquaredEdgeBordered
            | StructuredKind::CayleyMenger => dim + 2,
        }
    }
}

/// Balloon product matrix: entry (i,j) = 2*x_i*x_j for i != j, -2*x_i^2 on the
/// diagonal.
pub fn balloon_matrix<S: Scalar>(radii: &BalloonRadii<S>) -> SquareMatrix<S> {
    let two = S::from_int(2);
    let x = radii.radii();
    SquareMatrix::from_fn(radii.dim() + 1, |i, j| {
        if i == j {
            -(two.clone() * x[i].clone() * x[i].clone())
        } else {
            two.clone() * x[i].clone() * x[j].clone()
        }
    })
}

/// Border a matrix with a leading zero corner and ones along the new first
/// row and column.
pub fn bordered<S: Scalar>(inner: &SquareMatrix<S>) -> SquareMatrix<S> {
    let n = inner.order();
    SquareMatrix::from_fn(n + 1, |i, j| match (i, j) {
        (0, 0) => S::zero(),
        (0, _) | (_, 0) => S::one(),
        _ => inner.entry(i - 1, j - 1).clone(),
    })
}

/// Squared edge matrix of a circumscriptible simplex: (x_i+x_j)^2 off the
/// diagonal, zero on it.
pub fn squared_edge_matrix<S: Scalar>(radii: &BalloonRadii<S>) -> SquareMatrix<S> {
    let x = radii.radii();
    SquareMatrix::from_fn(radii.dim() + 1, |i, j| {
        if i == j {
            S::zero()
        } else {
            let a = x[i].clone() + x[j].clone();
            a.clone() * a
        }
    })
}

/// Squared edge matrix of a general edge set.
pub fn squared_edge_matrix_of<S: Scalar>(edges: &EdgeLengthMatrix<S>) -> SquareMatrix<S> {
    SquareMatrix::from_fn(edges.dim() + 1, |i, j| {
        let a = edges.length(i, j).clone();
        a.clone() * a
    })
}

/// Cayley-Menger matrix: the bordered squared edge matrix.
pub fn cayley_menger<S: Scalar>(edges: &EdgeLengthMatrix<S>) -> SquareMatrix<S> {
    bordered(&squared_edge_matrix_of(edges))
}

/// Closed form of the balloon matrix determinant:
/// (-1)^n * (n-1) * 2^(2n+1) * (prod x_i)^2.
pub fn balloon_det_closed<S: Scalar>(radii: &BalloonRadii<S>) -> S {
    let n = radii.dim();
    let prod = radii.product();
    sign_pow::<S>(n)
        * S::from_int((n - 1) as i64)
        * pow(&S::from_int(2), (2 * n + 1) as u32)
        * prod.clone()
        * prod
}

/// Closed form of the balloon matrix inverse: diagonal
/// (2-n)/((4n-4)*x_i^2), off-diagonal 1/((4n-4)*x_i*x_j).
pub fn balloon_inverse_closed<S: Scalar>(radii: &BalloonRadii<S>) -> SquareMatrix<S> {
    let n = radii.dim() as i64;
    let x = radii.radii();
    let diag_coeff = S::from_ratio(2 - n, 4 * n - 4);
    let off_coeff = S::from_ratio(1, 4 * n - 4);
    SquareMatrix::from_fn(radii.dim() + 1, |i, j| {
        if i == j {
            diag_coeff.clone() / (x[i].clone() * x[i].clone())
        } else {
            off_coeff.clone() / (x[i].clone() * x[j].clone())
        }
    })
}

/// Closed form of the squared edge matrix determinant:
/// (-1)^n * 2^(2n-3)/(n-1) * (prod x_i)^2 * discriminant,
/// with the discriminant taken from the symmetric sums.
pub fn squared_edge_det_closed<S: Scalar>(radii: &BalloonRadii<S>) -> S {
    let n = radii.dim();
    let sums = radii.symmetric_sums();
    let prod = radii.product();
    sign_pow::<S>(n)
        * pow(&S::from_int(2), (2 * n - 3) as u32)
        / S::from_int((n - 1) as i64)
        * prod.clone()
        * prod
        * sums.discriminant()
}
