//! Ordered-field scalar abstraction with two backends: exact arbitrary-precision
//! rationals and IEEE double-precision floats.
//!
//! Every quantity in this crate is polynomial (or a quotient of polynomials) in
//! the balloon radii, so the whole pipeline runs unchanged over either backend.
//! The exact backend keeps values in lowest terms after every operation and
//! refuses square roots; square roots exist only on the float backend, which is
//! why the library states all of its identities on squared quantities.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::matrix::{self, SquareMatrix};

/// Exact rational scalar: an arbitrary-precision integer pair p/q kept in
/// lowest terms with q > 0 after every operation.
pub type Rational = BigRational;

/// Relative tolerance for float-backend comparisons.
pub const FLOAT_REL_TOL: f64 = 1e-9;

/// Absolute floor below which float differences are treated as zero.
pub const FLOAT_ABS_TOL: f64 = 1e-12;

/// Errors raised by scalar-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    /// Square root of a negative value.
    #[error("square root of negative value")]
    NegativeSqrt,
    /// Square roots are only defined on the float backend.
    #[error("square roots are not available on the exact backend")]
    ExactSqrt,
    /// A float operation produced NaN or infinity.
    #[error("non-finite value")]
    NonFinite,
    /// Text could not be parsed as a scalar.
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

/// An ordered field with the handful of extras the simplex formulas need.
///
/// Implemented by [`Rational`] (exact backend) and `f64` (float backend).
/// Because computations are generic over this trait, mixing backends inside
/// one matrix or one simplex is ruled out at compile time.
pub trait Scalar:
    Sized
    + Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True for the exact rational backend.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;

    /// The fraction num/den. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs(&self) -> Self;

    /// Lossy conversion for reporting and conditioning estimates.
    fn to_f64(&self) -> f64;

    /// Nonnegative square root. Errors on negative input and on the exact
    /// backend, which has no closed square roots.
    fn try_sqrt(&self) -> Result<Self, NumericError>;

    /// Backend-appropriate equality: exact comparison on rationals, relative
    /// tolerance with an absolute floor on floats.
    fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool;

    /// Representation-level equality (bit-identical for floats).
    fn bit_eq(&self, other: &Self) -> bool;

    /// Parse from text. Accepts integers, `p/q` fractions and decimal
    /// literals (decimals map to their exact binary value on the exact
    /// backend).
    fn parse(text: &str) -> Result<Self, NumericError>;

    /// Determinant kernel for this backend; see [`SquareMatrix::determinant`].
    fn determinant(m: &SquareMatrix<Self>) -> Self;

    /// Determinant plus the largest coefficient bit-length observed while
    /// eliminating (0 for the float backend).
    fn determinant_with_bits(m: &SquareMatrix<Self>) -> (Self, u64);

    /// Bit length of the value's representation: max of numerator and
    /// denominator bit lengths for rationals, 0 for floats.
    fn max_bits(&self) -> u64;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn try_sqrt(&self) -> Result<Self, NumericError> {
        Err(NumericError::ExactSqrt)
    }

    fn approx_eq(&self, other: &Self, _rel_tol: f64) -> bool {
        self == other
    }

    fn bit_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn parse(text: &str) -> Result<Self, NumericError> {
        let text = text.trim();
        if let Ok(r) = BigRational::from_str(text) {
            return Ok(r);
        }
        // Decimal literals map to the exact value of their binary rounding,
        // so the two backends agree on shared inputs.
        let f = f64::from_str(text).map_err(|_| NumericError::Parse(text.to_string()))?;
        BigRational::from_float(f).ok_or(NumericError::Parse(text.to_string()))
    }

    fn determinant(m: &SquareMatrix<Self>) -> Self {
        matrix::bareiss_determinant(m).0
    }

    fn determinant_with_bits(m: &SquareMatrix<Self>) -> (Self, u64) {
        matrix::bareiss_determinant(m)
    }

    fn max_bits(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_positive(&self) -> bool {
        *self > 0.0
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn try_sqrt(&self) -> Result<Self, NumericError> {
        if self.is_nan() || self.is_infinite() {
            return Err(NumericError::NonFinite);
        }
        if *self < 0.0 {
            return Err(NumericError::NegativeSqrt);
        }
        Ok(self.sqrt())
    }

    fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        let diff = f64::abs(self - other);
        let scale = f64::abs(*self).max(f64::abs(*other));
        diff <= FLOAT_ABS_TOL.max(rel_tol * scale)
    }

    fn bit_eq(&self, other: &Self) -> bool {
        self.to_bits() == other.to_bits()
    }

    fn parse(text: &str) -> Result<Self, NumericError> {
        let text = text.trim();
        if let Ok(f) = f64::from_str(text) {
            if !f.is_finite() {
                return Err(NumericError::NonFinite);
            }
            return Ok(f);
        }
        if let Some((num, den)) = text.split_once('/') {
            let n = f64::from_str(num.trim()).map_err(|_| NumericError::Parse(text.into()))?;
            let d = f64::from_str(den.trim()).map_err(|_| NumericError::Parse(text.into()))?;
            if d == 0.0 {
                return Err(NumericError::Parse(text.into()));
            }
            return Ok(n / d);
        }
        Err(NumericError::Parse(text.to_string()))
    }

    fn determinant(m: &SquareMatrix<Self>) -> Self {
        matrix::pivoting_determinant(m).0
    }

    fn determinant_with_bits(m: &SquareMatrix<Self>) -> (Self, u64) {
        matrix::pivoting_determinant(m)
    }

    fn max_bits(&self) -> u64 {
        0
    }
}

/// `base^exp` by repeated multiplication; avoids any integer-width limits.
pub fn pow<S: Scalar>(base: &S, exp: u32) -> S {
    let mut out = S::one();
    for _ in 0..exp {
        out = out * base.clone();
    }
    out
}

/// `k!` as a scalar.
pub fn factorial<S: Scalar>(k: usize) -> S {
    let mut out = S::one();
    for v in 2..=k {
        out = out * S::from_int(v as i64);
    }
    out
}

/// (−1)^k as a scalar.
pub fn sign_pow<S: Scalar>(k: usize) -> S {
    if k.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        <Rational as Scalar>::from_ratio(p, q)
    }

    #[test]
    fn rational_stays_in_lowest_terms() {
        let a = rat(4, 6);
        assert_eq!(a.numer(), &BigInt::from(2));
        assert_eq!(a.denom(), &BigInt::from(3));
        let b = rat(1, 3) + rat(1, 6);
        assert_eq!(b, rat(1, 2));
        let c = rat(-3, -9);
        assert!(c.denom() > &BigInt::from(0));
        assert_eq!(c, rat(1, 3));
    }

    #[test]
    fn sqrt_zero_is_zero() {
        assert_eq!(0.0f64.try_sqrt().unwrap(), 0.0);
    }

    #[test]
    fn sqrt_of_quarter_perfect_square() {
        let v = <f64 as Scalar>::from_ratio(25, 4);
        assert_eq!(v.try_sqrt().unwrap(), 2.5);
    }

    #[test]
    fn sqrt_of_three_halves() {
        // Circumradius of the regular tetrahedron with edge 2: a*sqrt(3/8).
        let r = <f64 as Scalar>::from_ratio(3, 2).try_sqrt().unwrap();
        assert!((r - 1.224_744_871_391_589).abs() < 1e-12);
        assert!((r - 2.0 * (3.0f64 / 8.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sqrt_rejects_negative_and_exact() {
        assert_eq!((-1.0f64).try_sqrt(), Err(NumericError::NegativeSqrt));
        assert_eq!(rat(3, 2).try_sqrt(), Err(NumericError::ExactSqrt));
    }

    #[test]
    fn parse_round_trips() {
        assert_eq!(<Rational as Scalar>::parse("25/4").unwrap(), rat(25, 4));
        assert_eq!(<Rational as Scalar>::parse("-7").unwrap(), rat(-7, 1));
        assert_eq!(<Rational as Scalar>::parse("0.5").unwrap(), rat(1, 2));
        assert_eq!(<f64 as Scalar>::parse("25/4").unwrap(), 6.25);
        assert_eq!(<f64 as Scalar>::parse("1.5").unwrap(), 1.5);
        assert!(<Rational as Scalar>::parse("not-a-number").is_err());
    }

    #[test]
    fn display_matches_fraction_form() {
        assert_eq!(rat(25, 4).to_string(), "25/4");
        assert_eq!(rat(36, 1).to_string(), "36");
        assert_eq!(rat(-1, 2).to_string(), "-1/2");
    }

    #[test]
    fn float_approx_eq_uses_relative_tolerance() {
        assert!(1.0f64.approx_eq(&(1.0 + 5e-10), FLOAT_REL_TOL));
        assert!(!1.0f64.approx_eq(&(1.0 + 5e-8), FLOAT_REL_TOL));
        // Absolute floor near zero.
        assert!(0.0f64.approx_eq(&1e-13, FLOAT_REL_TOL));
    }
}
