//! Extended non-negative values.
//!
//! Grid functions take values in [0, +inf]. [`ExtNonNeg`] wraps a scalar with
//! the invariant "non-negative, never NaN", which makes comparison total and
//! lets +inf flow through the calculus without special cases at call sites.

use crate::scalar::Real;
use crate::Error;
use std::cmp::Ordering;

/// A value in the extended half-line [0, +inf].
///
/// `+inf` is a first-class value (peaks of unbounded functions); NaN and
/// negatives are rejected at construction, so ordering is total.
#[derive(Debug, Clone, Copy, PartialEq)]
#[repr(transparent)]
pub struct ExtNonNeg<R>(R);

impl<R: Real> ExtNonNeg<R> {
    /// Wraps `x`, rejecting NaN and negative values.
    pub fn new(x: R) -> Result<Self, Error> {
        if x.is_nan() {
            return Err(Error::NanValue);
        }
        if x < R::zero() {
            return Err(Error::NegativeValue);
        }
        Ok(ExtNonNeg(x))
    }

    /// Wraps a value already known to be in [0, +inf].
    ///
    /// Debug builds still check; release builds trust the caller. Internal
    /// kernels use this on values produced by operations that preserve the
    /// invariant.
    #[inline]
    pub fn new_unchecked(x: R) -> Self {
        debug_assert!(!x.is_nan() && x >= R::zero());
        ExtNonNeg(x)
    }

    #[inline]
    pub fn zero() -> Self {
        ExtNonNeg(R::zero())
    }

    #[inline]
    pub fn infinity() -> Self {
        ExtNonNeg(R::infinity())
    }

    /// The underlying scalar (may be `+inf`).
    #[inline]
    pub fn value(self) -> R {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == R::zero()
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// Minus the natural logarithm, the log-representation of a grid value.
    ///
    /// Maps 0 to +inf and +inf to -inf, both exactly.
    #[inline]
    pub fn neg_log(self) -> R {
        -self.0.ln()
    }

    /// Inverse of [`ExtNonNeg::neg_log`].
    #[inline]
    pub fn from_neg_log(v: R) -> Self {
        ExtNonNeg::new_unchecked((-v).exp())
    }
}

impl<R: Real> PartialOrd for ExtNonNeg<R> {
    #[inline]
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_total(other))
    }
}

impl<R: Real> ExtNonNeg<R> {
    /// Total order; valid because NaN is excluded by construction.
    #[inline]
    pub fn cmp_total(&self, other: &Self) -> Ordering {
        self.0
            .partial_cmp(&other.0)
            .expect("ExtNonNeg values are never NaN")
    }

    #[inline]
    pub fn max(self, other: Self) -> Self {
        if self.cmp_total(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    #[inline]
    pub fn min(self, other: Self) -> Self {
        if self.cmp_total(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nan_and_negative() {
        assert!(matches!(ExtNonNeg::<f64>::new(f64::NAN), Err(Error::NanValue)));
        assert!(matches!(
            ExtNonNeg::new(-1.0e-300),
            Err(Error::NegativeValue)
        ));
        assert!(ExtNonNeg::new(0.0).is_ok());
        assert!(ExtNonNeg::new(f64::INFINITY).is_ok());
    }

    #[test]
    fn ordering_is_total_with_infinity() {
        let z = ExtNonNeg::<f64>::zero();
        let one = ExtNonNeg::new(1.0).unwrap();
        let inf = ExtNonNeg::<f64>::infinity();
        assert!(z < one && one < inf);
        assert_eq!(inf.max(one), inf);
        assert_eq!(inf.min(z), z);
    }

    #[test]
    fn log_round_trip_is_exact_at_the_ends() {
        let z = ExtNonNeg::<f64>::zero();
        assert_eq!(z.neg_log(), f64::INFINITY);
        assert_eq!(ExtNonNeg::<f64>::from_neg_log(f64::INFINITY), z);
        let inf = ExtNonNeg::<f64>::infinity();
        assert_eq!(inf.neg_log(), f64::NEG_INFINITY);
        assert_eq!(ExtNonNeg::<f64>::from_neg_log(f64::NEG_INFINITY), inf);
        let x = ExtNonNeg::new(0.7).unwrap();
        let back = ExtNonNeg::<f64>::from_neg_log(x.neg_log());
        assert!((back.value() - 0.7).abs() < 1e-15);
    }
}
