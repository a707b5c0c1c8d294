//! Difference-integral suites for log-concave inputs: the extremal orthant
//! exponential, random instances, affine images, and the even-function
//! lower bound.

use diffn_core::family::AnalyticFamily;
use diffn_core::grid::{Axis, BoxDomain, GridFunction};
use diffn_core::quad::integrate;
use diffn_core::transform::{
    delta_v_on_dual, difference_domain, difference_function, DifferenceRoute,
};
use diffn_core::Alpha;

use crate::config::SuiteConfig;
use crate::gen;
use crate::report::CaseReport;
use crate::rng::SplitMix64;
use crate::CliError;

use super::{aligned_orthant, bracket_case, integral_ratio, require_dims, timed};

fn route_name(route: DifferenceRoute) -> &'static str {
    match route {
        DifferenceRoute::Direct => "direct",
        DifferenceRoute::Conjugate => "conjugate",
        DifferenceRoute::LevelSet => "level-set",
    }
}

fn default_orthant_nodes(dim: usize) -> usize {
    match dim {
        1 => 2049,
        2 => 513,
        _ => 129,
    }
}

/// The orthant exponential attains the difference-integral bound `2^n`
/// exactly, so the measured ratio must sit on the bound itself.
pub(super) fn rs_functional_extremal(cfg: &SuiteConfig) -> Result<Vec<CaseReport>, CliError> {
    let dims = require_dims(cfg, &[1, 2, 3])?;
    let width = 2.0 * cfg.halfwidth_or(25.0);
    let mut cases = Vec::new();
    for n in dims.iter().copied() {
        let min_nodes = cfg.nodes_or(default_orthant_nodes(n));
        let route = if n == 1 {
            DifferenceRoute::Direct
        } else {
            DifferenceRoute::Conjugate
        };
        let (res, ms) = timed(|| {
            let f = aligned_orthant(n, min_nodes, width);
            integral_ratio(&f, Alpha::zero(), route)
        });
        let (ratio, tail) = res?;
        let target = (1u32 << n) as f64;
        let mut case = bracket_case(
            format!("orthant n={n} nodes={min_nodes} {}", route_name(route)),
            ratio,
            target * (1.0 - cfg.tol),
            target * (1.0 + cfg.tol),
        )
        .with_tail(tail);
        case.ms = ms;
        cases.push(case);
    }
    if dims.contains(&1) {
        let (res, ms) = timed(|| cross_route_gap(width));
        let (gap, h) = res?;
        let mut case = bracket_case("cross-route n=1 log gap", gap, 0.0, 3.0 * h);
        case.ms = ms;
        cases.push(case);
    }
    Ok(cases)
}

/// Direct and conjugate computations of the same difference function must
/// agree to first order in the grid step. Compares log values away from
/// the truncation edge, where both are well above the rounding floor.
fn cross_route_gap(width: f64) -> Result<(f64, f64), CliError> {
    let f = aligned_orthant(1, 1025, width);
    let h = width / 1024.0;
    let direct = difference_function(&f, Alpha::zero(), DifferenceRoute::Direct)?;
    let conj = difference_function(&f, Alpha::zero(), DifferenceRoute::Conjugate)?;
    let mut gap: f64 = 0.0;
    for (i, z) in direct.domain().iter_nodes() {
        if z[0].abs() > width / 2.0 - 2.0 {
            continue;
        }
        let d = direct.value(i);
        let c = conj.value(i);
        if d.is_finite() && c.is_finite() && !d.is_zero() && !c.is_zero() {
            gap = gap.max((d.neg_log() - c.neg_log()).abs());
        }
    }
    Ok((gap, h))
}

/// Random log-concave instances: the difference integral lands between the
/// input integral and `2^n` times it.
pub(super) fn rs_functional_random(cfg: &SuiteConfig) -> Result<Vec<CaseReport>, CliError> {
    let dims = require_dims(cfg, &[1, 2])?;
    let hw = cfg.halfwidth_or(23.0);
    let mut rng = SplitMix64::new(cfg.seed);
    let mut cases = Vec::new();
    for n in dims {
        let count = cfg.nodes_or(if n == 1 { 2049 } else { 641 });
        let route = if n == 1 {
            DifferenceRoute::Direct
        } else {
            DifferenceRoute::Conjugate
        };
        let upper = (1u32 << n) as f64;
        for k in 0..50 {
            let f = gen::random_log_concave(&mut rng, n, hw, count);
            let (res, ms) = timed(|| integral_ratio(&f, Alpha::zero(), route));
            let (ratio, tail) = res?;
            let mut case = bracket_case(
                format!("log-concave n={n} case={k:02}"),
                ratio,
                1.0 - cfg.tol,
                upper * (1.0 + cfg.tol),
            )
            .with_tail(tail);
            case.ms = ms;
            cases.push(case);
        }
    }
    Ok(cases)
}

/// The difference-integral ratio is invariant under invertible affine maps
/// and positive scaling, so rotated, sheared, and translated copies of the
/// orthant exponential must reproduce the planar ratio 4.
pub(super) fn rs_functional_affine(cfg: &SuiteConfig) -> Result<Vec<CaseReport>, CliError> {
    require_dims(cfg, &[2])?;
    let count = cfg.nodes_or(1025);
    let mut rng = SplitMix64::new(cfg.seed);
    let mut cases = Vec::new();
    for k in 0..10 {
        let theta = rng.range(0.0, std::f64::consts::TAU);
        let phi = rng.range(0.0, std::f64::consts::TAU);
        let s1 = rng.range(0.6, 2.0);
        let s2 = rng.range(0.6, 2.0);
        let matrix = rotate_scale_rotate(theta, phi, s1, s2);
        let scale = rng.range(0.5, 2.0);
        let shift_steps = [rng.below(7) as i64 - 3, rng.below(7) as i64 - 3];
        let (res, ms) = timed(|| affine_orthant_ratio(&matrix, scale, shift_steps, count));
        let (ratio, tail, det) = res?;
        let slack = (1.5 * cfg.tol).max(0.03);
        let mut case = bracket_case(
            format!("affine case={k} det={det:.3} scale={scale:.2}"),
            ratio,
            4.0 * (1.0 - slack),
            4.0 * (1.0 + slack),
        )
        .with_tail(tail);
        case.ms = ms;
        cases.push(case);
    }
    Ok(cases)
}

fn rotate_scale_rotate(theta: f64, phi: f64, s1: f64, s2: f64) -> [f64; 4] {
    let (ct, st) = (theta.cos(), theta.sin());
    let (cp, sp) = (phi.cos(), phi.sin());
    // R(theta) * diag(s1, s2) * R(phi), row-major.
    [
        ct * s1 * cp - st * s2 * sp,
        -ct * s1 * sp - st * s2 * cp,
        st * s1 * cp + ct * s2 * sp,
        -st * s1 * sp + ct * s2 * cp,
    ]
}

/// Builds `scale * exp(-<1, A x + b>)` on the pulled-back cone with the
/// apex placed on a grid node, then measures the difference ratio through
/// the conjugate route. Placing the apex on a node keeps the conjugation
/// error of the kink at the rounding level.
fn affine_orthant_ratio(
    matrix: &[f64; 4],
    scale: f64,
    shift_steps: [i64; 2],
    count: usize,
) -> Result<(f64, f64, f64), CliError> {
    let det = matrix[0] * matrix[3] - matrix[1] * matrix[2];
    let inv = [
        matrix[3] / det,
        -matrix[1] / det,
        -matrix[2] / det,
        matrix[0] / det,
    ];
    // Preimages of the truncated cone corners (0,0), (L,0), (0,L).
    let truncation = 40.0;
    let corners = [
        [0.0, 0.0],
        [inv[0] * truncation, inv[2] * truncation],
        [inv[1] * truncation, inv[3] * truncation],
    ];
    let mut axes = Vec::with_capacity(2);
    let mut shift = [0.0, 0.0];
    for k in 0..2 {
        let lo = corners.iter().map(|c| c[k]).fold(f64::INFINITY, f64::min);
        let hi = corners.iter().map(|c| c[k]).fold(f64::NEG_INFINITY, f64::max);
        let pad = 0.05 * (hi - lo);
        let h = (hi - lo + 2.0 * pad) / (count as f64 - 1.0);
        // Snap the lower bound so the apex coordinate 0 is a grid node.
        let j = ((pad - lo) / h).round();
        let t = shift_steps[k] as f64 * h;
        shift[k] = t;
        axes.push(Axis::new(-j * h + t, -j * h + t + (count as f64 - 1.0) * h, count)?);
    }
    let b = [
        -(matrix[0] * shift[0] + matrix[1] * shift[1]),
        -(matrix[2] * shift[0] + matrix[3] * shift[1]),
    ];
    let family = AnalyticFamily::AffineImage {
        inner: Box::new(AnalyticFamily::OrthantExp { dim: 2 }),
        matrix: matrix.to_vec(),
        shift: b.to_vec(),
        scale,
    };
    let domain = BoxDomain::new(axes)?;
    let f = family.sample(&domain)?;
    // The symmetrized conjugate of the cone potential lives on the slope
    // square pulled back through the transpose, so its axis extent is the
    // column l1 norm of the matrix. The automatic dual box only sees the
    // slope inside the cone, which rotation can push well below that.
    let dual_axes = (0..2)
        .map(|k| {
            let extent = 1.15 * (matrix[k].abs() + matrix[2 + k].abs());
            Axis::new(-extent, extent, count | 1)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dual = BoxDomain::new(dual_axes)?;
    let out = difference_domain(f.domain());
    let dv = delta_v_on_dual(&f.log_field(), &out, &dual)?;
    let delta = GridFunction::from_logs(out, dv.values().to_vec())?;
    let num = integrate(&delta);
    let den = integrate(&f);
    Ok((num.value / den.value, (num.tail + den.tail) / den.value, det))
}

/// Even log-concave instances: the witness pair `(z, -z)` lies on the grid,
/// so the discrete difference integral is bounded below by the input
/// integral with no tolerance at all.
pub(super) fn pl_lower(cfg: &SuiteConfig) -> Result<Vec<CaseReport>, CliError> {
    let dims = require_dims(cfg, &[1, 2])?;
    let hw = cfg.halfwidth_or(23.0);
    let mut rng = SplitMix64::new(cfg.seed);
    let mut cases = Vec::new();
    for n in dims {
        let (count, total) = if n == 1 { (2049, 12) } else { (65, 8) };
        let count = cfg.nodes_or(count);
        let upper = (1u32 << n) as f64;
        for k in 0..total {
            let f = gen::random_even_log_concave(&mut rng, n, hw, count);
            let (res, ms) = timed(|| integral_ratio(&f, Alpha::zero(), DifferenceRoute::Direct));
            let (ratio, tail) = res?;
            let mut case = bracket_case(
                format!("even n={n} case={k:02}"),
                ratio,
                1.0 - 1e-12,
                upper * (1.0 + cfg.tol),
            )
            .with_tail(tail);
            case.ms = ms;
            cases.push(case);
        }
    }
    Ok(cases)
}
