//! The verification suites: each one builds a family of instances, computes
//! the relevant functionals, and reports one case per instance with its
//! measured value, the admissible bound, and a pass flag.

mod alpha;
mod bodies;
mod functional;
mod rearrange;

use std::time::Instant;

use diffn_core::body::Polytope;
use diffn_core::family::{support_coverage, AnalyticFamily};
use diffn_core::grid::{BoxDomain, GridFunction};
use diffn_core::quad::integrate;
use diffn_core::transform::{difference_function, DifferenceRoute};
use diffn_core::Alpha;

use crate::config::{SuiteConfig, SuiteId};
use crate::report::{CaseReport, VerificationReport};
use crate::CliError;

pub fn run(id: SuiteId, cfg: &SuiteConfig) -> Result<VerificationReport, CliError> {
    cfg.validate()?;
    let cases = match id {
        SuiteId::RsFunctionalExtremal => functional::rs_functional_extremal(cfg)?,
        SuiteId::RsFunctionalRandom => functional::rs_functional_random(cfg)?,
        SuiteId::RsFunctionalAffine => functional::rs_functional_affine(cfg)?,
        SuiteId::PlLower => functional::pl_lower(cfg)?,
        SuiteId::RsBodySimplex => bodies::rs_body_simplex(cfg)?,
        SuiteId::RsBodyRandom => bodies::rs_body_random(cfg)?,
        SuiteId::HullUnion => bodies::hull_union(cfg)?,
        SuiteId::PolarIdentity => bodies::polar_identity(cfg)?,
        SuiteId::HullDuality => bodies::hull_duality(cfg)?,
        SuiteId::AlphaMinusInfinity => alpha::alpha_minus_infinity(cfg)?,
        SuiteId::AlphaGeneralBound => alpha::alpha_general_bound(cfg)?,
        SuiteId::Alpha1d => alpha::alpha_1d(cfg)?,
        SuiteId::RearrangeLemma => rearrange::rearrange_lemma(cfg)?,
    };
    Ok(VerificationReport::new(id.name(), cfg.clone(), cases))
}

pub(crate) fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_millis() as u64)
}

/// Integral of the difference function over the integral of the input,
/// together with a relative truncation estimate.
pub(crate) fn integral_ratio(
    f: &GridFunction<f64>,
    alpha: Alpha<f64>,
    route: DifferenceRoute,
) -> Result<(f64, f64), CliError> {
    let delta = difference_function(f, alpha, route).map_err(CliError::Core)?;
    let num = integrate(&delta);
    let den = integrate(f);
    Ok((num.value / den.value, (num.tail + den.tail) / den.value))
}

/// The orthant exponential `exp(-(x_1 + ... + x_n))` on a grid that places
/// the support boundary on nodes: box `[-2h, width]` per axis with
/// `min_nodes + 2` nodes, so `h` divides both bounds and node pairs snap
/// exactly. Coverage fractions handle the half cells on the boundary.
pub(crate) fn aligned_orthant(dim: usize, min_nodes: usize, width: f64) -> GridFunction<f64> {
    let h = width / (min_nodes as f64 - 1.0);
    let bounds: Vec<(f64, f64, usize)> =
        (0..dim).map(|_| (-2.0 * h, width, min_nodes + 2)).collect();
    let domain = BoxDomain::from_bounds(&bounds).expect("orthant grid bounds are valid");
    AnalyticFamily::OrthantExp { dim }
        .sample(&domain)
        .expect("orthant sampling cannot fail")
}

/// Lower Riemann sum of a layer decomposition: levels in decreasing order
/// with the volume of each level body held constant down to the next level.
/// Exact for indicators; never above the true integral for nested levels.
pub(crate) fn exact_layer_cake(levels: &[(f64, Polytope<f64>)]) -> f64 {
    let vols: Vec<f64> = levels.iter().map(|(_, p)| p.volume()).collect();
    let mut total = 0.0;
    for k in 0..levels.len() {
        let below = if k + 1 < levels.len() { levels[k + 1].0 } else { 0.0 };
        total += (levels[k].0 - below) * vols[k];
    }
    total
}

/// Scales a body by one half about the origin.
pub(crate) fn half_body(body: &Polytope<f64>) -> Result<Polytope<f64>, CliError> {
    let pts: Vec<Vec<f64>> = body
        .vertices()
        .iter()
        .map(|v| v.iter().map(|c| 0.5 * c).collect())
        .collect();
    Polytope::from_points(body.dim(), &pts).map_err(CliError::Core)
}

/// Attaches exact support coverage to a computed difference function, so
/// that quadrature neither counts mass outside the known support nor
/// misweights its boundary cells.
pub(crate) fn with_support_cover(
    delta: GridFunction<f64>,
    support: &Polytope<f64>,
) -> Result<GridFunction<f64>, CliError> {
    let cover = support_coverage(delta.domain(), &support.facets());
    let domain = delta.domain().clone();
    GridFunction::from_values(domain, delta.values().to_vec())
        .and_then(|g| g.with_cover(cover))
        .map_err(CliError::Core)
}

/// Two-sided ratio case: pass when `ratio` lies in `[lo, hi]`.
pub(crate) fn bracket_case(
    id: impl Into<String>,
    ratio: f64,
    lo: f64,
    hi: f64,
) -> CaseReport {
    let pass = ratio.is_finite() && ratio >= lo && ratio <= hi;
    let mut c = CaseReport::new(id, ratio, hi, pass);
    c.slack = (hi - ratio).min(ratio - lo);
    c
}

/// Rejects a `--dim` override that the suite cannot honor.
pub(crate) fn require_dims(cfg: &SuiteConfig, allowed: &[usize]) -> Result<Vec<usize>, CliError> {
    let dims = cfg.dims_or(allowed);
    if dims.is_empty() {
        return Err(CliError::Config(format!(
            "this suite supports dimensions {allowed:?}"
        )));
    }
    Ok(dims)
}
