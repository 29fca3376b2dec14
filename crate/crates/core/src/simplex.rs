//! Balloon radii and edge lengths as first-class data.
//!
//! An n-simplex has an edge-tangent sphere exactly when positive balloon
//! radii x_0..x_n exist with a_ij = x_i + x_j; the x_i are then unique, which
//! makes circumscriptibility of a given edge set decidable by recovering the
//! candidate radii and recomputing the edges.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimplexError {
    /// Formulas divide by n-1, so only n >= 2 is admitted.
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("balloon radius x_{index} = {value} is not positive")]
    NonPositiveRadius { index: usize, value: String },
    #[error("edge matrix must be square of order n+1: {0}")]
    BadEdgeShape(String),
    #[error("edge ({i},{j}) = {value} is not positive")]
    NonPositiveEdge { i: usize, j: usize, value: String },
    #[error("edge matrix is not symmetric at ({i},{j}): {upper} vs {lower}")]
    AsymmetricEdge {
        i: usize,
        j: usize,
        upper: String,
        lower: String,
    },
    #[error("edge matrix diagonal entry ({i},{i}) = {value} must be zero")]
    NonZeroDiagonal { i: usize, value: String },
    /// The edge set admits no edge-tangent sphere.
    #[error("not circumscriptible: {0}")]
    NotCircumscriptible(#[from] CircumscriptibleFailure),
}

/// Why radius recovery failed, with the offending index or entry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircumscriptibleFailure {
    #[error("recovered balloon radius x_{index} = {value} is not positive")]
    NonPositiveRecovered { index: usize, value: String },
    #[error("edge ({i},{j}) = {actual} differs from x_{i}+x_{j} = {expected}")]
    EdgeMismatch {
        i: usize,
        j: usize,
        expected: String,
        actual: String,
    },
}

/// The vector (x_0, ..., x_n) of positive balloon radii defining a
/// circumscriptible n-simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct BalloonRadii<S> {
    dim: usize,
    radii: Vec<S>,
}

impl<S: Scalar> BalloonRadii<S> {
    /// n+1 positive radii for an n-simplex, n >= 2.
    pub fn new(radii: Vec<S>) -> Result<Self, SimplexError> {
        if radii.len() < 3 {
            return Err(SimplexError::DimensionTooSmall(radii.len().saturating_sub(1)));
        }
        for (index, x) in radii.iter().enumerate() {
            if !x.is_positive() {
                return Err(SimplexError::NonPositiveRadius {
                    index,
                    value: x.to_string(),
                });
            }
        }
        Ok(Self {
            dim: radii.len() - 1,
            radii,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radii(&self) -> &[S] {
        &self.radii
    }

    pub fn radius(&self, i: usize) -> &S {
        &self.radii[i]
    }

    /// Product of all radii.
    pub fn product(&self) -> S {
        self.radii
            .iter()
            .fold(S::one(), |acc, x| acc * x.clone())
    }

    pub fn is_regular(&self) -> bool {
        self.radii.iter().all(|x| x == &self.radii[0])
    }

    /// Edge lengths a_ij = x_i + x_j.
    pub fn edge_lengths(&self) -> EdgeLengthMatrix<S> {
        let n1 = self.dim + 1;
        let mut lengths = Vec::with_capacity(n1 * n1);
        for i in 0..n1 {
            for j in 0..n1 {
                if i == j {
                    lengths.push(S::zero());
                } else {
                    lengths.push(self.radii[i].clone() + self.radii[j].clone());
                }
            }
        }
        EdgeLengthMatrix {
            dim: self.dim,
            lengths,
        }
    }

    pub fn symmetric_sums(&self) -> SymmetricSums<S> {
        SymmetricSums::from_radii(self)
    }

    /// Realizability test: the margin recip_sum^2 - (n-1)*recip_sq_sum must be
    /// strictly positive for the simplex to be non-degenerate. Margin zero is
    /// reported as not realizable because the volume vanishes there and the
    /// metric quotients become singular.
    pub fn realizability(&self) -> Realizability<S> {
        let margin = self.symmetric_sums().recip_margin;
        Realizability {
            realizable: margin.is_positive(),
            margin,
        }
    }
}

/// Symmetric (n+1)x(n+1) matrix of edge lengths with zero diagonal and
/// strictly positive off-diagonal entries.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeLengthMatrix<S> {
    dim: usize,
    lengths: Vec<S>,
}

impl<S: Scalar> EdgeLengthMatrix<S> {
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self, SimplexError> {
        let n1 = rows.len();
        if n1 < 3 {
            return Err(SimplexError::DimensionTooSmall(n1.saturating_sub(1)));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n1 {
                return Err(SimplexError::BadEdgeShape(format!(
                    "row {i} has {} entries, expected {n1}",
                    row.len()
                )));
            }
        }
        for i in 0..n1 {
            if !rows[i][i].is_zero() {
                return Err(SimplexError::NonZeroDiagonal {
                    i,
                    value: rows[i][i].to_string(),
                });
            }
            for j in i + 1..n1 {
                if !rows[i][j].bit_eq(&rows[j][i]) {
                    return Err(SimplexError::AsymmetricEdge {
                        i,
                        j,
                        upper: rows[i][j].to_string(),
                        lower: rows[j][i].to_string(),
                    });
                }
                if !rows[i][j].is_positive() {
                    return Err(SimplexError::NonPositiveEdge {
                        i,
                        j,
                        value: rows[i][j].to_string(),
                    });
                }
            }
        }
        Ok(Self {
            dim: n1 - 1,
            lengths: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from the upper triangle listed row by row:
    /// (a_01, a_02, ..., a_0n, a_12, ..., a_{n-1,n}).
    pub fn from_upper(dim: usize, upper: &[S]) -> Result<Self, SimplexError> {
        let n1 = dim + 1;
        let expected = n1 * (n1 - 1) / 2;
        if upper.len() != expected {
            return Err(SimplexError::BadEdgeShape(format!(
                "{} upper-triangle entries, expected {expected} for dimension {dim}",
                upper.len()
            )));
        }
        let mut rows = vec![vec![S::zero(); n1]; n1];
        let mut it = upper.iter();
        for i in 0..n1 {
            for j in i + 1..n1 {
                let v = it.next().unwrap().clone();
                rows[i][j] = v.clone();
                rows[j][i] = v;
            }
        }
        Self::new(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.dim + 1
    }

    pub fn length(&self, i: usize, j: usize) -> &S {
        &self.lengths[i * (self.dim + 1) + j]
    }

    /// Sum of squared edge lengths over i < j.
    pub fn sum_squared(&self) -> S {
        let n1 = self.dim + 1;
        let mut acc = S::zero();
        for i in 0..n1 {
            for j in i + 1..n1 {
                let a = self.length(i, j).clone();
                acc = acc + a.clone() * a;
            }
        }
        acc
    }

    /// Recover the balloon radii, or fail if the edge set has no edge-tangent
    /// sphere.
    ///
    /// The candidate is x_i = (n * sum_{j != i} a_ij - sum_{k<l} a_kl) / (n(n-1));
    /// since the radii are overdetermined for n >= 2, the edges are recomputed
    /// and compared entry by entry (exactly on the exact backend, within the
    /// float tolerance otherwise).
    pub fn balloon_radii(&self) -> Result<BalloonRadii<S>, SimplexError> {
        let n = self.dim;
        let n1 = n + 1;
        let mut total = S::zero();
        for i in 0..n1 {
            for j in i + 1..n1 {
                total = total + self.length(i, j).clone();
            }
        }
        let denom = S::from_int((n * (n - 1)) as i64);
        let n_scalar = S::from_int(n as i64);
        let mut radii = Vec::with_capacity(n1);
        for i in 0..n1 {
            let mut incident = S::zero();
            for j in 0..n1 {
                if j != i {
                    incident = incident + self.length(i, j).clone();
                }
            }
            let x = (n_scalar.clone() * incident - total.clone()) / denom.clone();
            if !x.is_positive() {
                return Err(CircumscriptibleFailure::NonPositiveRecovered {
                    index: i,
                    value: x.to_string(),
                }
                .into());
            }
            radii.push(x);
        }
        for i in 0..n1 {
            for j in i + 1..n1 {
                let expected = radii[i].clone() + radii[j].clone();
                let actual = self.length(i, j);
                let matches = if S::EXACT {
                    &expected == actual
                } else {
                    expected.approx_eq(actual, crate::scalar::FLOAT_REL_TOL)
                };
                if !matches {
                    return Err(CircumscriptibleFailure::EdgeMismatch {
                        i,
                        j,
                        expected: expected.to_string(),
                        actual: actual.to_string(),
                    }
                    .into());
                }
            }
        }
        BalloonRadii::new(radii)
    }
}

/// The four power sums of the balloon radii together with the three derived
/// quantities every metric formula is built from.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSums<S> {
    pub dim: usize,
    /// Sum of the radii.
    pub radius_sum: S,
    /// Sum of squared radii.
    pub radius_sq_sum: S,
    /// Sum of reciprocal radii.
    pub recip_sum: S,
    /// Sum of squared reciprocal radii.
    pub recip_sq_sum: S,
    /// radius_sum * recip_sum - (n-1)(n-3).
    pub cross: S,
    /// recip_sum^2 - (n-1) * recip_sq_sum; the realizability margin.
    pub recip_margin: S,
    /// radius_sum^2 - (n-1) * radius_sq_sum.
    pub radius_margin: S,
}

impl<S: Scalar> SymmetricSums<S> {
    pub fn from_radii(radii: &BalloonRadii<S>) -> Self {
        let n = radii.dim();
        let mut radius_sum = S::zero();
        let mut radius_sq_sum = S::zero();
        let mut recip_sum = S::zero();
        let mut recip_sq_sum = S::zero();
        for x in radii.radii() {
            let r = S::one() / x.clone();
            radius_sum = radius_sum + x.clone();
            radius_sq_sum = radius_sq_sum + x.clone() * x.clone();
            recip_sum = recip_sum + r.clone();
            recip_sq_sum = recip_sq_sum + r.clone() * r;
        }
        let nm1 = S::from_int((n - 1) as i64);
        let nm3 = S::from_int(n as i64 - 3);
        let cross = radius_sum.clone() * recip_sum.clone() - nm1.clone() * nm3;
        let recip_margin =
            recip_sum.clone() * recip_sum.clone() - nm1.clone() * recip_sq_sum.clone();
        let radius_margin =
            radius_sum.clone() * radius_sum.clone() - nm1 * radius_sq_sum.clone();
        Self {
            dim: n,
            radius_sum,
            radius_sq_sum,
            recip_sum,
            recip_sq_sum,
            cross,
            recip_margin,
            radius_margin,
        }
    }

    /// cross^2 - recip_margin * radius_margin, the numerator shared by the
    /// circumradius formulas. Bounded below by 32n(n-1), with equality exactly
    /// for equal radii.
    pub fn discriminant(&self) -> S {
        self.cross.clone() * self.cross.clone()
            - self.recip_margin.clone() * self.radius_margin.clone()
    }
}

/// Outcome of the realizability test with its signed margin.
#[derive(Debug, Clone, PartialEq)]
pub struct Realizability<S> {
    pub realizable: bool,
    pub margin: S,
}
