//! Convex-body suites: difference bodies, reflection hulls, polarity, and
//! the duality between hull operations and conjugation.

use diffn_core::family::AnalyticFamily;
use diffn_core::grid::{BoxDomain, ScalarField};
use diffn_core::quad::integrate;
use diffn_core::transform::{legendre_involution_gap, level_set_difference};
use diffn_core::{hull_duality_check, Polytope};

use crate::config::SuiteConfig;
use crate::gen;
use crate::report::CaseReport;
use crate::rng::SplitMix64;
use crate::CliError;

use super::{bracket_case, exact_layer_cake, require_dims, timed};

fn centered(body: &Polytope<f64>) -> Polytope<f64> {
    let shift: Vec<f64> = body.vertex_centroid().iter().map(|c| -c).collect();
    body.translate(&shift)
}

/// Simplices maximize the difference-body volume ratio: `C(2n, n)` exactly.
/// The grid counterpart runs the level-set pipeline over an indicator on an
/// aligned grid, where every hull step is exact.
pub(super) fn rs_body_simplex(cfg: &SuiteConfig) -> Result<Vec<CaseReport>, CliError> {
    let dims = require_dims(cfg, &[2, 3])?;
    let mut cases = Vec::new();
    if dims.contains(&2) {
        let (ratio, ms) = timed(|| simplex_diff_ratio(2));
        let mut case = bracket_case("triangle-diff", ratio?, 6.0 - 1e-12, 6.0 + 1e-12);
        case.ms = ms;
        cases.push(case);

        let (res, ms) = timed(|| indicator_ratio(&Polytope::standard_simplex(2)?, -0.5, 1.5, 513));
        let mut case = bracket_case(
            "triangle-indicator nodes=513",
            res?,
            1.5 * (1.0 - cfg.tol),
            1.5 * (1.0 + cfg.tol),
        );
        case.ms = ms;
        cases.push(case);
    }
    if dims.contains(&3) {
        let (ratio, ms) = timed(|| simplex_diff_ratio(3));
        let mut case = bracket_case("tetra-diff", ratio?, 20.0 - 1e-9, 20.0 + 1e-9);
        case.ms = ms;
        cases.push(case);

        let (res, ms) = timed(|| indicator_ratio(&Polytope::standard_simplex(3)?, -0.5, 1.5, 65));
        let mut case = bracket_case(
            "tetra-indicator nodes=65",
            res?,
            2.5 * (1.0 - cfg.tol),
            2.5 * (1.0 + cfg.tol),
        );
        case.ms = ms;
        cases.push(case);
    }
    if dims.contains(&2) {
        let mut rng = SplitMix64::new(cfg.seed);
        for k in 0..20 {
            let sides = 5 + rng.below(4) as usize;
            let radius = rng.range(1.0, 2.0);
            let body = gen::random_polygon(&mut rng, sides, radius);
            let (res, ms) = timed(|| random_indicator_ratio(&body, cfg.nodes_or(257)));
            let mut case = bracket_case(
                format!("indicator-random case={k:02}"),
                res?,
                0.9,
                1.5 * (1.0 + cfg.tol),
            );
            case.ms = ms;
            cases.push(case);
        }
    }
    Ok(cases)
}

fn simplex_diff_ratio(dim: usize) -> Result<f64, CliError> {
    let s: Polytope<f64> = Polytope::standard_simplex(dim)?;
    Ok(s.difference_body()?.volume() / s.volume())
}

/// Level-set difference ratio for an indicator on `[lo, hi]^n` with the
/// support boundary on grid nodes.
fn indicator_ratio(body: &Polytope<f64>, lo: f64, hi: f64, count: usize) -> Result<f64, CliError> {
    let bounds: Vec<(f64, f64, usize)> = (0..body.dim()).map(|_| (lo, hi, count)).collect();
    let domain = BoxDomain::from_bounds(&bounds)?;
    let f = AnalyticFamily::Indicator { body: body.clone() }.sample(&domain)?;
    let layers = level_set_difference(&f)?;
    Ok(exact_layer_cake(&layers.levels) / integrate(&f).value)
}

fn random_indicator_ratio(body: &Polytope<f64>, count: usize) -> Result<f64, CliError> {
    let domain = gen::padded_bbox(body, count);
    let f = AnalyticFamily::Indicator { body: body.clone() }.sample(&domain)?;
    let layers = level_set_difference(&f)?;
    Ok(exact_layer_cake(&layers.levels) / integrate(&f).value)
}

/// Difference-body volume ratios over random hulls stay between `2^n`
/// (centrally symmetric bodies) and `C(2n, n)` (simplices), and every body
/// passes the polar-consistency check.
pub(super) fn rs_body_random(cfg: &SuiteConfig) -> Result<Vec<CaseReport>, CliError> {
    let dims = require_dims(cfg, &[2, 3])?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut cases = Vec::new();
    if dims.contains(&2) {
        for k in 0..100 {
            let sides = 3 + rng.below(6) as usize;
            let radius = rng.range(0.5, 2.5);
            let body = gen::random_polygon(&mut rng, sides, radius);
            let (res, ms) = timed(|| diff_ratio_with_duality(&body));
            let (ratio, dual_ok) = res?;
            let mut case = bracket_case(
                format!("polygon case={k:02} sides={sides}"),
                ratio,
                4.0 - 1e-9,
                6.0 + 1e-9,
            );
            case.pass &= dual_ok;
            case.ms = ms;
            cases.push(case);
        }
    }
    if dims.contains(&3) {
        for k in 0..10 {
            let points = 8 + rng.below(7) as usize;
            let radius = rng.range(1.0, 2.0);
            let body = gen::random_polytope3(&mut rng, points, radius);
            let (res, ms) = timed(|| diff_ratio_with_duality(&body));
            let (ratio, dual_ok) = res?;
            let mut case = bracket_case(
                format!("polytope3 case={k:02} points={points}"),
                ratio,
                8.0 - 1e-9,
                20.0 + 1e-9,
            );
            case.pass &= dual_ok;
            case.ms = ms;
            cases.push(case);
        }
    }
    Ok(cases)
}

fn diff_ratio_with_duality(body: &Polytope<f64>) -> Result<(f64, bool), CliError> {
    let ratio = body.difference_body()?.volume() / body.volume();
    let dual_ok = hull_duality_check(&centered(body), 1e-9)?;
    Ok((ratio, dual_ok))
}

/// Reflecting a body through one of its points and taking the hull of the
/// union at most quadruples the area in the plane (doubles per dimension),
/// with equality at a triangle vertex.
pub(super) fn hull_union(cfg: &SuiteConfig) -> Result<Vec<CaseReport>, CliError> {
    let dims = require_dims(cfg, &[2, 3])?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut cases = Vec::new();
    if dims.contains(&2) {
        let triangle: Polytope<f64> = Polytope::standard_simplex(2)?;
        for (k, v) in triangle.vertices().to_vec().iter().enumerate() {
            let (res, ms) = timed(|| -> Result<f64, CliError> {
                Ok(triangle.hull_with_reflection(v)?.volume() / triangle.volume())
            });
            let mut case =
                bracket_case(format!("triangle vertex={k}"), res?, 4.0 - 1e-12, 4.0 + 1e-12);
            case.ms = ms;
            cases.push(case);
        }
        for k in 0..100 {
            let sides = 3 + rng.below(6);
            let radius = rng.range(0.5, 2.5);
            let body = gen::random_polygon(&mut rng, sides, radius);
            let x = gen::random_point_in(&mut rng, &body);
            let (res, ms) = timed(|| -> Result<f64, CliError> {
                Ok(body.hull_with_reflection(&x)?.volume() / body.volume())
            });
            let mut case = bracket_case(
                format!("polygon case={k:02}"),
                res?,
                1.0 - 1e-9,
                4.0 + 1e-9,
            );
            case.ms = ms;
            cases.push(case);
        }
    }
    if dims.contains(&3) {
        for k in 0..10 {
            let points = 8 + rng.below(7);
            let body = gen::random_polytope3(&mut rng, points, 1.5);
            let x = gen::random_point_in(&mut rng, &body);
            let (res, ms) = timed(|| -> Result<f64, CliError> {
                Ok(body.hull_with_reflection(&x)?.volume() / body.volume())
            });
            let mut case = bracket_case(
                format!("polytope3 case={k:02}"),
                res?,
                1.0 - 1e-9,
                8.0 + 1e-9,
            );
            case.ms = ms;
            cases.push(case);
        }
    }
    Ok(cases)
}

/// Polarity fixed points and involution: known polar volumes, and the
/// bipolar of a body with the origin interior returns the body.
pub(super) fn polar_identity(cfg: &SuiteConfig) -> Result<Vec<CaseReport>, CliError> {
    let dims = require_dims(cfg, &[1, 2, 3])?;
    let mut cases = Vec::new();
    if dims.contains(&1) {
        let seg: Polytope<f64> = Polytope::from_points(1, &[vec![-0.5], vec![2.0]])?;
        let (res, ms) = timed(|| -> Result<(f64, f64), CliError> {
            let polar = seg.polar()?;
            Ok((polar.volume(), polar.polar()?.volume()))
        });
        let (pv, bv) = res?;
        let mut case = bracket_case("segment polar", pv, 2.5 - 1e-12, 2.5 + 1e-12);
        case.pass &= (bv - seg.volume()).abs() <= 1e-12;
        case.ms = ms;
        cases.push(case);
    }
    if dims.contains(&2) {
        let square: Polytope<f64> = Polytope::centered_cube(2, 1.0)?;
        let (res, ms) = timed(|| -> Result<f64, CliError> { Ok(square.polar()?.volume()) });
        let mut case = bracket_case("square polar", res?, 2.0 - 1e-12, 2.0 + 1e-12);
        case.ms = ms;
        cases.push(case);
    }
    if dims.contains(&3) {
        let cube: Polytope<f64> = Polytope::centered_cube(3, 1.0)?;
        let (res, ms) = timed(|| -> Result<f64, CliError> { Ok(cube.polar()?.volume()) });
        let target = 8.0 / 6.0;
        let mut case = bracket_case("cube polar", res?, target - 1e-12, target + 1e-12);
        case.ms = ms;
        cases.push(case);
    }
    if dims.contains(&2) {
        let mut rng = SplitMix64::new(cfg.seed);
        for k in 0..10 {
            let sides = 4 + rng.below(5);
            let radius = rng.range(0.8, 2.0);
            let body = centered(&gen::random_polygon(&mut rng, sides, radius));
            let (res, ms) = timed(|| -> Result<f64, CliError> {
                Ok(body.polar()?.polar()?.volume() / body.volume())
            });
            let mut case = bracket_case(
                format!("bipolar case={k:02}"),
                res?,
                1.0 - 1e-9,
                1.0 + 1e-9,
            );
            case.ms = ms;
            cases.push(case);
        }
    }
    Ok(cases)
}

/// Support-side duality: the polar of an intersection with the reflection
/// is the difference hull of the polar, and discrete Legendre conjugation
/// is an involution on convex grid data.
pub(super) fn hull_duality(cfg: &SuiteConfig) -> Result<Vec<CaseReport>, CliError> {
    let dims = require_dims(cfg, &[1, 2, 3])?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut cases = Vec::new();
    if dims.contains(&2) {
        let gallery: Vec<(String, Polytope<f64>)> = vec![
            ("square".into(), Polytope::centered_cube(2, 1.0)?),
            ("triangle".into(), centered(&Polytope::standard_simplex(2)?)),
        ];
        for (name, body) in gallery {
            let (res, ms) = timed(|| hull_duality_check(&body, 1e-9).map_err(CliError::Core));
            let ok = res?;
            let mut case = bracket_case(name, if ok { 0.0 } else { 1.0 }, 0.0, 0.5);
            case.ms = ms;
            cases.push(case);
        }
        for k in 0..10 {
            let sides = 3 + rng.below(5);
            let body = centered(&gen::random_polygon(&mut rng, sides, 1.5));
            let (res, ms) = timed(|| hull_duality_check(&body, 1e-9).map_err(CliError::Core));
            let ok = res?;
            let mut case = bracket_case(
                format!("polygon case={k:02}"),
                if ok { 0.0 } else { 1.0 },
                0.0,
                0.5,
            );
            case.ms = ms;
            cases.push(case);
        }
    }
    if dims.contains(&3) {
        let cube: Polytope<f64> = Polytope::centered_cube(3, 1.0)?;
        let (res, ms) = timed(|| hull_duality_check(&cube, 1e-9).map_err(CliError::Core));
        let ok = res?;
        let mut case = bracket_case("cube", if ok { 0.0 } else { 1.0 }, 0.0, 0.5);
        case.ms = ms;
        cases.push(case);
        for k in 0..5 {
            let points = 8 + rng.below(5);
            let body = centered(&gen::random_polytope3(&mut rng, points, 1.5));
            let (res, ms) = timed(|| hull_duality_check(&body, 1e-9).map_err(CliError::Core));
            let ok = res?;
            let mut case = bracket_case(
                format!("polytope3 case={k:02}"),
                if ok { 0.0 } else { 1.0 },
                0.0,
                0.5,
            );
            case.ms = ms;
            cases.push(case);
        }
    }
    // Conjugating twice returns convex grid data up to the dual grid step.
    for &(dim, count, c) in &[(1usize, 1025usize, 0.5f64), (1, 1025, 1.0), (2, 129, 1.0)] {
        if !dims.contains(&dim) {
            continue;
        }
        let bounds: Vec<(f64, f64, usize)> = (0..dim).map(|_| (-3.0, 3.0, count)).collect();
        let domain = BoxDomain::from_bounds(&bounds)?;
        let v = ScalarField::from_fn(domain, |x| c * x.iter().map(|t| t * t).sum::<f64>())?;
        let h = 6.0 / (count as f64 - 1.0);
        let (res, ms) = timed(|| legendre_involution_gap(&v).map_err(CliError::Core));
        let mut case = bracket_case(
            format!("involution quadratic dim={dim} c={c}"),
            res?,
            0.0,
            2.0 * h * h,
        );
        case.ms = ms;
        cases.push(case);
    }
    Ok(cases)
}
