//! Dense square matrices with backend-specific determinant kernels.
//!
//! The exact kernel clears denominators row by row and runs fraction-free
//! (Bareiss) elimination over the integers: every intermediate entry is a
//! minor of the scaled matrix, so coefficient growth stays polynomially
//! bounded and every division is exact. The float kernel is ordinary
//! Gaussian elimination with partial pivoting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{Rational, Scalar};

/// Row-major dense square matrix over one scalar backend.
///
/// Backend mixing is impossible by construction: the entry type is a single
/// generic parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<S> {
    order: usize,
    entries: Vec<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },
    #[error("matrix order must be positive")]
    Empty,
}

impl<S: Scalar> SquareMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, MatrixError> {
        let order = rows.len();
        if order == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(order * order);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(MatrixError::RaggedRows {
                    row: i,
                    len: row.len(),
                    expected: order,
                });
            }
            entries.extend(row);
        }
        Ok(Self { order, entries })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        assert!(order > 0, "matrix order must be positive");
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        Self { order, entries }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.order + j]
    }

    /// Standard matrix product. Fails on order mismatch; backend mismatch
    /// cannot be expressed.
    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.order != rhs.order {
            return Err(MatrixError::OrderMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        let n = self.order;
        Ok(Self::from_fn(n, |i, j| {
            let mut acc = S::zero();
            for k in 0..n {
                acc = acc + self.entry(i, k).clone() * rhs.entry(k, j).clone();
            }
            acc
        }))
    }

    /// Determinant via the backend kernel: fraction-free elimination on the
    /// exact backend, partially pivoted elimination on the float backend.
    pub fn determinant(&self) -> S {
        S::determinant(self)
    }

    /// Determinant together with the maximum coefficient bit-length seen
    /// during elimination (0 on the float backend).
    pub fn determinant_with_bits(&self) -> (S, u64) {
        S::determinant_with_bits(self)
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..self.order {
            for j in 0..self.order {
                let want = if i == j { S::one() } else { S::zero() };
                if self.entry(i, j) != &want {
                    return false;
                }
            }
        }
        true
    }
}

/// Fraction-free determinant of a rational matrix.
///
/// Each row is scaled by the LCM of its denominators so elimination runs over
/// integers; the scale product divides back out at the end. Returns the exact
/// determinant and the widest integer (in bits) produced along the way.
pub(crate) fn bareiss_determinant(m: &SquareMatrix<Rational>) -> (Rational, u64) {
    let n = m.order();
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut lcm = BigInt::one();
        for j in 0..n {
            lcm = lcm.lcm(m.entry(i, j).denom());
        }
        let row: Vec<BigInt> = (0..n)
            .map(|j| {
                let e = m.entry(i, j);
                e.numer() * (&lcm / e.denom())
            })
            .collect();
        scale *= &lcm;
        a.push(row);
    }

    let mut max_bits = a
        .iter()
        .flatten()
        .map(|v| v.bits())
        .max()
        .unwrap_or(0)
        .max(scale.bits());

    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return (<Rational as Scalar>::zero(), max_bits),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[i][j] = num / &prev;
                max_bits = max_bits.max(a[i][j].bits());
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }

    let det_int = if sign < 0 {
        -a[n - 1][n - 1].clone()
    } else {
        a[n - 1][n - 1].clone()
    };
    max_bits = max_bits.max(det_int.bits());
    (Rational::new(det_int, scale), max_bits)
}

/// Float determinant by Gaussian elimination with partial pivoting.
pub(crate) fn pivoting_determinant(m: &SquareMatrix<f64>) -> (f64, u64) {
    let n = m.order();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| *m.entry(i, j)).collect())
        .collect();
    let mut det = 1.0f64;
    for k in 0..n {
        let (pivot_row, pivot_abs) = (k..n)
            .map(|r| (r, a[r][k].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pivot_abs == 0.0 {
            return (0.0, 0);
        }
        if pivot_row != k {
            a.swap(k, pivot_row);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let factor = a[i][k] / a[k][k];
            for j in k + 1..n {
                a[i][j] -= factor * a[k][j];
            }
            a[i][k] = 0.0;
        }
    }
    (det, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        <Rational as Scalar>::from_ratio(p, q)
    }

    fn int_matrix(rows: &[&[i64]]) -> SquareMatrix<Rational> {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_determinant_is_one() {
        let m = SquareMatrix::<Rational>::identity(4);
        assert_eq!(m.determinant(), rat(1, 1));
        let f = SquareMatrix::<f64>::identity(4);
        assert_eq!(f.determinant(), 1.0);
    }

    #[test]
    fn two_by_two_hand_expansion() {
        let m = int_matrix(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.determinant(), rat(-2, 1));
        let f = SquareMatrix::<f64>::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert!((f.determinant() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn balloon_matrix_of_unit_triangle() {
        // Cofactor expansion by hand gives 32 for this matrix.
        let m = int_matrix(&[&[-2, 2, 2], &[2, -2, 2], &[2, 2, -2]]);
        assert_eq!(m.determinant(), rat(32, 1));
    }

    #[test]
    fn singular_matrix_yields_zero() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[7, 8, 9]]);
        assert_eq!(m.determinant(), rat(0, 1));
    }

    #[test]
    fn rational_entries_are_handled_exactly() {
        let m = SquareMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 5), rat(1, 7)],
        ])
        .unwrap();
        // 1/14 - 1/15 = 1/210
        assert_eq!(m.determinant(), rat(1, 210));
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        let m = int_matrix(&[&[0, 1, 2], &[1, 0, 3], &[4, 5, 0]]);
        // det = 0*(0-15) - 1*(0-12) + 2*(5-0) = 22
        assert_eq!(m.determinant(), rat(22, 1));
    }

    #[test]
    fn swap_matrix_is_an_involution() {
        let swap =
            SquareMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]])
                .unwrap();
        assert!(swap.mul(&swap).unwrap().is_identity());
        let id3 = SquareMatrix::<Rational>::identity(3);
        assert!(id3.mul(&id3).unwrap().is_identity());
    }

    #[test]
    fn mul_rejects_order_mismatch() {
        let a = SquareMatrix::<Rational>::identity(2);
        let b = SquareMatrix::<Rational>::identity(3);
        assert_eq!(
            a.mul(&b),
            Err(MatrixError::OrderMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let err = SquareMatrix::from_rows(vec![vec![rat(1, 1)], vec![rat(1, 1), rat(2, 1)]]);
        assert!(matches!(err, Err(MatrixError::RaggedRows { .. })));
        assert_eq!(
            SquareMatrix::<Rational>::from_rows(vec![]),
            Err(MatrixError::Empty)
        );
    }

    #[test]
    fn float_determinant_pivots_on_magnitude() {
        let m = SquareMatrix::<f64>::from_rows(vec![
            vec![1e-14, 1.0, 0.0],
            vec![1.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0],
        ])
        .unwrap();
        // Exact determinant: 1e-14*(0-1) - 1*(1-0) + 0 = -1 - 1e-14
        assert!((m.determinant() + 1.0).abs() < 1e-9);
    }
}
