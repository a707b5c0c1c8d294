//! Means of order alpha on the extended half-line.
//!
//! For a concavity parameter alpha <= 0 the two-point mean interpolates
//! between the geometric mean (alpha = 0) and the minimum (alpha = -inf);
//! strictly negative finite alpha uses the power mean
//! `(t a^alpha + (1-t) b^alpha)^(1/alpha)`. Zeros and infinities follow the
//! conventions that make alpha-concavity well behaved:
//!
//! * a zero argument forces a zero mean in the negative-power regimes (and in
//!   the geometric regime whenever the zero carries positive weight);
//! * an infinite argument paired with a finite c > 0 contributes only its
//!   vanishing power, leaving `c * w^(1/alpha)` where w is the weight of the
//!   finite argument — `c / 2^(1/alpha)` at the symmetric weight;
//! * a zero paired with an infinity yields zero in every regime: vanishing
//!   beats divergence.
//!
//! All computation runs in log space so that exponents like -1e6 neither
//! overflow nor lose the regime-boundary limits.

use crate::scalar::{half, real, Real};
use crate::value::ExtNonNeg;
use crate::Error;

/// Concavity parameter: 0, a strictly negative finite exponent, or -inf.
///
/// Constructed only through [`Alpha::zero`], [`Alpha::finite`] and
/// [`Alpha::minus_infinity`], so an `Alpha` is always valid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha<R> {
    repr: Repr<R>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Repr<R> {
    Zero,
    Finite(R),
    MinusInfinity,
}

/// Pattern-matchable view of an [`Alpha`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaRegime<R> {
    Zero,
    Finite(R),
    MinusInfinity,
}

impl<R: Real> Alpha<R> {
    /// The geometric-mean regime (alpha = 0).
    pub fn zero() -> Self {
        Alpha { repr: Repr::Zero }
    }

    /// The minimum regime (alpha = -inf).
    pub fn minus_infinity() -> Self {
        Alpha {
            repr: Repr::MinusInfinity,
        }
    }

    /// A strictly negative finite exponent.
    pub fn finite(alpha: R) -> Result<Self, Error> {
        if !alpha.is_finite() || alpha >= R::zero() {
            return Err(Error::InvalidAlpha);
        }
        Ok(Alpha {
            repr: Repr::Finite(alpha),
        })
    }

    /// Classifies a raw scalar: 0 -> Zero, -inf -> MinusInfinity, negative
    /// finite -> Finite. Positive or NaN values are rejected.
    pub fn from_scalar(alpha: R) -> Result<Self, Error> {
        if alpha == R::zero() {
            Ok(Self::zero())
        } else if alpha == R::neg_infinity() {
            Ok(Self::minus_infinity())
        } else {
            Self::finite(alpha)
        }
    }

    /// View for pattern matching.
    pub fn regime(&self) -> AlphaRegime<R> {
        match self.repr {
            Repr::Zero => AlphaRegime::Zero,
            Repr::Finite(a) => AlphaRegime::Finite(a),
            Repr::MinusInfinity => AlphaRegime::MinusInfinity,
        }
    }

    /// The exponent when finite.
    pub fn exponent(&self) -> Option<R> {
        match self.repr {
            Repr::Finite(a) => Some(a),
            _ => None,
        }
    }

    /// `2^(-1/alpha)`: the factor by which the symmetric mean of an infinite
    /// and a finite argument divides the finite one. 1 at alpha = -inf,
    /// +inf in the geometric regime.
    pub fn symmetric_infinity_factor(&self) -> R {
        match self.repr {
            Repr::Zero => R::infinity(),
            Repr::Finite(a) => (-(real::<R>(2.0)).ln() / a).exp(),
            Repr::MinusInfinity => R::one(),
        }
    }
}

/// Mean of order alpha with weight `t` on the first argument; `t` in [0, 1].
pub fn mean_alpha<R: Real>(
    a: ExtNonNeg<R>,
    b: ExtNonNeg<R>,
    t: R,
    alpha: Alpha<R>,
) -> Result<ExtNonNeg<R>, Error> {
    if t.is_nan() || t < R::zero() || t > R::one() {
        return Err(Error::WeightOutOfRange);
    }
    Ok(mean_alpha_unchecked(a, b, t, alpha))
}

/// Symmetric mean (weight 1/2); the form every grid kernel uses.
#[inline]
pub fn mean_alpha_symmetric<R: Real>(
    a: ExtNonNeg<R>,
    b: ExtNonNeg<R>,
    alpha: Alpha<R>,
) -> ExtNonNeg<R> {
    mean_alpha_unchecked(a, b, half(), alpha)
}

fn mean_alpha_unchecked<R: Real>(
    a: ExtNonNeg<R>,
    b: ExtNonNeg<R>,
    t: R,
    alpha: Alpha<R>,
) -> ExtNonNeg<R> {
    // Vanishing beats divergence in every regime.
    if (a.is_zero() && b.is_infinite()) || (a.is_infinite() && b.is_zero()) {
        return ExtNonNeg::zero();
    }
    if a == b {
        return a;
    }
    match alpha.regime() {
        AlphaRegime::MinusInfinity => a.min(b),
        AlphaRegime::Zero => geometric(a, b, t),
        AlphaRegime::Finite(exp) => power_mean(a, b, t, exp),
    }
}

fn geometric<R: Real>(a: ExtNonNeg<R>, b: ExtNonNeg<R>, t: R) -> ExtNonNeg<R> {
    let one = R::one();
    if a.is_zero() {
        return if t > R::zero() { ExtNonNeg::zero() } else { b };
    }
    if b.is_zero() {
        return if t < one { ExtNonNeg::zero() } else { a };
    }
    if a.is_infinite() {
        return if t > R::zero() { ExtNonNeg::infinity() } else { b };
    }
    if b.is_infinite() {
        return if t < one { ExtNonNeg::infinity() } else { a };
    }
    if t == R::zero() {
        return b;
    }
    if t == one {
        return a;
    }
    ExtNonNeg::new_unchecked((t * a.value().ln() + (one - t) * b.value().ln()).exp())
}

fn power_mean<R: Real>(a: ExtNonNeg<R>, b: ExtNonNeg<R>, t: R, exp: R) -> ExtNonNeg<R> {
    let one = R::one();
    // A zero argument annihilates every negative-power mean.
    if a.is_zero() || b.is_zero() {
        return ExtNonNeg::zero();
    }
    // An infinite argument contributes nothing to the sum of negative powers:
    // only the finite argument's weighted power survives. At weight zero on
    // the finite argument this correctly diverges.
    if a.is_infinite() {
        return scaled_by_weight(b, one - t, exp);
    }
    if b.is_infinite() {
        return scaled_by_weight(a, t, exp);
    }
    if t == R::zero() {
        return b;
    }
    if t == one {
        return a;
    }
    // Both finite positive: log-sum-exp keeps alpha = -1e6 and -1e-6 stable.
    let la = a.value().ln();
    let lb = b.value().ln();
    let ea = exp * la;
    let eb = exp * lb;
    let m = ea.max(eb);
    let s = t * (ea - m).exp() + (one - t) * (eb - m).exp();
    ExtNonNeg::new_unchecked(((m + s.ln()) / exp).exp())
}

/// `c * w^(1/alpha)` computed in log space; w = 0 gives +inf, w = 1 gives c.
fn scaled_by_weight<R: Real>(c: ExtNonNeg<R>, w: R, exp: R) -> ExtNonNeg<R> {
    ExtNonNeg::new_unchecked((c.value().ln() + w.ln() / exp).exp())
}
