//! Numerical calculus for alpha-concave functions on low-dimensional grids,
//! and the exact polytope operations that back it.
//!
//! The crate has two halves that meet in the verification suites:
//!
//! * **Grid calculus** — extended-valued functions sampled on uniform box
//!   grids in dimension 1..=3, with means of order alpha, discrete Legendre
//!   conjugation, infimal convolution, difference functions, quadrature and
//!   the 1-D decreasing rearrangement.
//! * **Convex bodies** — polytopes in dimension 1..=3 as normalized vertex
//!   lists, with exact hulls, Minkowski sums, polars, intersections and
//!   volumes.
//!
//! Everything is generic over the scalar type through [`scalar::Real`]
//! (any `num_traits::Float` with literal conversion works); the `*64`
//! aliases below fix `f64` for ordinary use.

pub mod alpha;
pub mod body;
pub mod family;
pub mod grid;
pub mod quad;
pub mod rearrange;
pub mod scalar;
pub mod transform;
pub mod value;

use thiserror::Error as ThisError;

/// Errors shared by the whole crate.
#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum Error {
    #[error("value is NaN")]
    NanValue,
    #[error("value is negative")]
    NegativeValue,
    #[error("alpha must be zero, a negative finite exponent, or -inf")]
    InvalidAlpha,
    #[error("interpolation weight must lie in [0, 1]")]
    WeightOutOfRange,
    #[error("dimension must be 1, 2 or 3 (got {0})")]
    UnsupportedDimension(usize),
    #[error("axis needs at least two nodes and increasing finite bounds")]
    BadAxis,
    #[error("dimension mismatch between operands")]
    DimensionMismatch,
    #[error("grid function must be positive somewhere")]
    TrivialFunction,
    #[error("infinite nodes must be isolated (two are adjacent)")]
    NonIsolatedInfinity,
    #[error("operation needs at least one finite value")]
    AllInfinite,
    #[error("conjugation input may not take the value -inf")]
    MinusInfiniteValue,
    #[error("family parameter out of its admissible range")]
    BadFamilyParameter,
    #[error("affine map must be invertible (|det| above tolerance)")]
    SingularMap,
    #[error("route does not apply to this concavity regime")]
    RouteMismatch,
    #[error("polytope is degenerate (not full-dimensional)")]
    DegenerateBody,
    #[error("origin must be interior to the body")]
    OriginNotInterior,
    #[error("bodies do not intersect in a full-dimensional set")]
    EmptyIntersection,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub use alpha::{mean_alpha, mean_alpha_symmetric, Alpha, AlphaRegime};
pub use body::{hull_duality_check, Polytope};
pub use family::AnalyticFamily;
pub use grid::{is_alpha_concave, BoxDomain, GridFunction, ScalarField};
pub use value::ExtNonNeg;

/// `f64` instantiations of the core types.
pub type Alpha64 = Alpha<f64>;
pub type ExtNonNeg64 = ExtNonNeg<f64>;
pub type Polytope64 = Polytope<f64>;
pub type BoxDomain64 = BoxDomain<f64>;
pub type GridFunction64 = GridFunction<f64>;
pub type ScalarField64 = ScalarField<f64>;
