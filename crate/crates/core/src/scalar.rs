//! Scalar abstraction for the whole crate.
//!
//! Everything numeric is generic over [`Real`], a floating-point scalar with
//! the transcendental functions the calculus needs (`exp`, `ln`, `powf`) and
//! conversions from literals. `f32` and `f64` both satisfy it; the crate root
//! exports `f64` aliases for the common instantiations.

use num_traits::{Float, FromPrimitive};
use std::fmt::{Debug, Display};

/// Floating-point scalar used by grids, transforms and bodies.
///
/// The bound is deliberately small: `Float` supplies IEEE semantics including
/// signed infinities (used to represent extended values exactly), and
/// `FromPrimitive` lets algorithms embed fixed constants.
pub trait Real: Float + FromPrimitive + Debug + Display + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + 'static {}

/// Embeds an `f64` constant into the scalar type.
///
/// Panics only if the scalar cannot represent ordinary finite literals, which
/// no `Float` implementation of interest does.
#[inline]
pub fn real<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("scalar type must represent f64 literals")
}

/// Half in the scalar type; the symmetric mean weight appears everywhere.
#[inline]
pub fn half<R: Real>() -> R {
    real(0.5)
}

/// Sums a slice by pairwise reduction.
///
/// Fixed association order makes results independent of iteration batching,
/// which the report determinism contract relies on, and keeps rounding error
/// logarithmic in the term count.
pub fn pairwise_sum<R: Real>(terms: &[R]) -> R {
    match terms.len() {
        0 => R::zero(),
        1 => terms[0],
        2 => terms[0] + terms[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&terms[..mid]) + pairwise_sum(&terms[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_embeds_literals() {
        let x: f64 = real(0.25);
        assert_eq!(x, 0.25);
        let y: f32 = real(0.25);
        assert_eq!(y, 0.25f32);
    }

    #[test]
    fn pairwise_sum_matches_naive_on_smooth_data() {
        let terms: Vec<f64> = (0..1000).map(|k| (k as f64).sin()).collect();
        let naive: f64 = terms.iter().sum();
        let paired = pairwise_sum(&terms);
        assert!((naive - paired).abs() < 1e-9);
    }

    #[test]
    fn pairwise_sum_is_deterministic_under_splits() {
        let terms: Vec<f64> = (0..777).map(|k| 1.0 / (1.0 + k as f64)).collect();
        let a = pairwise_sum(&terms);
        let b = pairwise_sum(&terms);
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
