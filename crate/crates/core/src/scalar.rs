//! Scalar field abstraction.
//!
//! Every algebraic routine in the crate is written against [`Scalar`], so the
//! same code runs over exact rationals (the only mode that produces
//! certificates) and over `f64`/`f32` for profiling.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};

/// A field of coefficients.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// Whether arithmetic is exact. Only exact scalars may certify anything.
    const EXACT: bool;

    /// Short name used in reports.
    const NAME: &'static str;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Zero test used by elimination. Exact types compare with zero; floats use
    /// an absolute tolerance.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// Magnitude proxy used for pivot choice in floating elimination.
    fn magnitude(&self) -> f64;
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const NAME: &'static str = "exact-rational";

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn magnitude(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

const F64_TOL: f64 = 1e-9;
const F32_TOL: f32 = 1e-4;

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "f64";

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn is_negligible(&self) -> bool {
        self.abs() < F64_TOL
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    const NAME: &'static str = "f32";

    fn from_i64(v: i64) -> Self {
        v as f32
    }

    fn is_negligible(&self) -> bool {
        self.abs() < F32_TOL
    }

    fn magnitude(&self) -> f64 {
        self.abs() as f64
    }
}

/// Exact rational scalar used for every certificate.
pub type Rational = BigRational;

/// Shorthand for an exact rational from a small fraction.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_exact() {
        let third = q(1, 3);
        let sum = third.clone() + third.clone() + third;
        assert_eq!(sum, Rational::from_i64(1));
        assert!((sum - Rational::from_i64(1)).is_negligible());
    }

    #[test]
    fn float_tolerance() {
        let x = 0.1f64 + 0.2 - 0.3;
        assert!(x != 0.0);
        assert!(x.is_negligible());
        assert!(!1e-3f64.is_negligible());
    }
}
