//! Quadrature on box grids: node-weighted integration with exact support
//! coverage, superlevel volumes, and layer-cake integration.
//!
//! Each node owns the cell `[x - h/2, x + h/2]` per axis, clamped to the box
//! (so boundary nodes own half cells). The integral is the sum of node value
//! times owned volume times the node's support-coverage fraction. This keeps
//! jumps unbiased wherever the support boundary is resolved by the coverage
//! fractions, and it is exactly linear and monotone.

use crate::grid::{BoxDomain, GridFunction};
use crate::scalar::{pairwise_sum, real, Real};
use crate::{Error, Result};

/// An integral value together with a crude truncation-tail estimate:
/// the largest boundary-node value times the box surface measure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralEstimate<R> {
    pub value: R,
    pub tail: R,
}

fn owned_length<R: Real>(domain: &BoxDomain<R>, axis: usize, idx: usize) -> R {
    let ax = domain.axis(axis);
    let h = ax.spacing();
    let half = real::<R>(0.5);
    let c = ax.coord(idx);
    (c + half * h).min(ax.upper()) - (c - half * h).max(ax.lower())
}

/// Per-axis surface measure of the box: the sum over axes of twice the
/// product of the other axes' widths (2 in 1-D).
fn surface_measure<R: Real>(domain: &BoxDomain<R>) -> R {
    let d = domain.dim();
    let widths: Vec<R> = (0..d)
        .map(|k| domain.axis(k).upper() - domain.axis(k).lower())
        .collect();
    let two = real::<R>(2.0);
    let mut s = R::zero();
    for k in 0..d {
        let mut face = two;
        for (j, &w) in widths.iter().enumerate() {
            if j != k {
                face = face * w;
            }
        }
        s = s + face;
    }
    s
}

/// Largest finite axis-neighbor value of a node; the cap used in place of an
/// isolated `+inf` value. Falls back to 0 when every neighbor is 0 or `+inf`.
fn infinity_cap<R: Real>(f: &GridFunction<R>, flat: usize) -> R {
    let domain = f.domain();
    let strides = domain.strides();
    let shape = domain.shape();
    let m = domain.multi_of(flat);
    let mut best = R::zero();
    for k in 0..domain.dim() {
        if m[k] > 0 {
            let v = f.value(flat - strides[k]);
            if v.is_finite() {
                best = best.max(v.value());
            }
        }
        if m[k] + 1 < shape[k] {
            let v = f.value(flat + strides[k]);
            if v.is_finite() {
                best = best.max(v.value());
            }
        }
    }
    best
}

/// Node-weighted integral of `f` over its box, with isolated `+inf` nodes
/// capped at their largest finite neighbor value. Summation is a fixed
/// pairwise reduction, so results are reproducible bit for bit.
pub fn integrate<R: Real>(f: &GridFunction<R>) -> IntegralEstimate<R> {
    let domain = f.domain();
    let d = domain.dim();
    let n = domain.node_count();
    let shape = domain.shape();
    let mut terms = Vec::with_capacity(n);
    let mut boundary_max = R::zero();
    for flat in 0..n {
        let m = domain.multi_of(flat);
        let mut w = R::one();
        let mut on_boundary = false;
        for k in 0..d {
            w = w * owned_length(domain, k, m[k]);
            on_boundary |= m[k] == 0 || m[k] + 1 == shape[k];
        }
        if let Some(cover) = f.cover() {
            w = w * cover[flat];
        }
        let v = f.value(flat);
        let value = if v.is_infinite() {
            infinity_cap(f, flat)
        } else {
            v.value()
        };
        if on_boundary {
            boundary_max = boundary_max.max(value);
        }
        terms.push(w * value);
    }
    IntegralEstimate {
        value: pairwise_sum(&terms),
        tail: boundary_max * surface_measure(domain),
    }
}

/// Volume of `{f > s}` by cell-center counting: a cell counts when the mean
/// of its corner values exceeds `s` (any `+inf` corner counts as `+inf`).
pub fn superlevel_volume<R: Real>(f: &GridFunction<R>, s: R) -> Result<R> {
    if s < R::zero() || s.is_nan() {
        return Err(Error::NegativeValue);
    }
    let domain = f.domain();
    let d = domain.dim();
    let shape = domain.shape();
    let strides = domain.strides();
    let cells_per_axis: Vec<usize> = shape.iter().map(|&c| c - 1).collect();
    let total_cells: usize = cells_per_axis.iter().product();
    let corners = 1usize << d;
    let scale = real::<R>(1.0 / corners as f64);

    let mut count = 0usize;
    for cell in 0..total_cells {
        // Decode the cell's base node multi-index.
        let mut rest = cell;
        let mut base = 0usize;
        for k in 0..d {
            let stride_cells: usize = cells_per_axis[k + 1..].iter().product();
            let i = rest / stride_cells;
            rest %= stride_cells;
            base += i * strides[k];
        }
        let mut sum = R::zero();
        let mut infinite = false;
        for mask in 0..corners {
            let mut flat = base;
            for k in 0..d {
                if mask >> k & 1 == 1 {
                    flat += strides[k];
                }
            }
            let v = f.value(flat);
            if v.is_infinite() {
                infinite = true;
                break;
            }
            sum = sum + v.value();
        }
        if infinite || sum * scale > s {
            count += 1;
        }
    }
    Ok(real::<R>(count as f64) * domain.cell_volume())
}

/// A geometric level grid from `top` down to `top * floor_ratio`, highest
/// first, with `s = 0` appended.
pub fn geometric_levels<R: Real>(top: R, floor_ratio: R, count: usize) -> Vec<R> {
    let mut out = Vec::with_capacity(count + 1);
    let step = floor_ratio.powf(real::<R>(1.0 / (count - 1) as f64));
    let mut s = top;
    for _ in 0..count {
        out.push(s);
        s = s * step;
    }
    out.push(R::zero());
    out
}

/// Layer-cake integral over a decreasing level grid: the trapezoid rule on
/// `s -> volume({f > s})` between consecutive levels, plus the rectangle
/// below the lowest positive level. A trailing level 0 only closes the last
/// trapezoid.
pub fn layer_cake<R: Real>(f: &GridFunction<R>, levels: &[R]) -> Result<R> {
    if levels.is_empty() {
        return Err(Error::Parse("empty level grid".into()));
    }
    for w in levels.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::Parse("levels must be strictly decreasing".into()));
        }
    }
    if levels[0] <= R::zero() || levels.iter().any(|s| s.is_nan()) {
        return Err(Error::NegativeValue);
    }
    let vols: Vec<R> = levels
        .iter()
        .map(|&s| superlevel_volume(f, s))
        .collect::<Result<Vec<_>>>()?;
    let half = real::<R>(0.5);
    let mut acc = R::zero();
    for k in 0..levels.len() - 1 {
        acc = acc + (levels[k] - levels[k + 1]) * half * (vols[k] + vols[k + 1]);
    }
    let last = levels.len() - 1;
    if levels[last] > R::zero() {
        acc = acc + levels[last] * vols[last];
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::Polytope;
    use crate::family::AnalyticFamily;
    use crate::grid::GridFunction;
    use crate::value::ExtNonNeg;

    type F = AnalyticFamily<f64>;

    #[test]
    fn orthant_exp_integrates_to_one() {
        let d = BoxDomain::from_bounds(&[(-1.0, 30.0, 513)]).unwrap();
        let f = F::OrthantExp { dim: 1 }.sample(&d).unwrap();
        let est = integrate(&f);
        assert!((est.value - 1.0).abs() < 5e-3, "got {}", est.value);
        assert!(est.tail < 1e-10);
    }

    #[test]
    fn absexp_integrates_to_two_per_dimension() {
        let d1 = BoxDomain::centered(1, 30.0, 513).unwrap();
        let f1 = F::AbsExp { dim: 1 }.sample(&d1).unwrap();
        assert!((integrate(&f1).value - 2.0).abs() < 1e-2);

        let d2 = BoxDomain::centered(2, 20.0, 257).unwrap();
        let f2 = F::AbsExp { dim: 2 }.sample(&d2).unwrap();
        assert!((integrate(&f2).value - 4.0).abs() < 4.0 * 5e-3);
    }

    #[test]
    fn aligned_triangle_indicator_integrates_exactly() {
        // Grid-aligned simplex: the support boundary runs along cell edges
        // and through nodes, so the coverage rule loses nothing.
        let d = BoxDomain::from_bounds(&[(-0.5, 1.5, 17), (-0.5, 1.5, 17)]).unwrap();
        let f = F::Indicator {
            body: Polytope::standard_simplex(2).unwrap(),
        }
        .sample(&d)
        .unwrap();
        let est = integrate(&f);
        assert!((est.value - 0.5).abs() < 1e-12, "got {}", est.value);
    }

    #[test]
    fn infinite_node_is_capped_not_fatal() {
        let d = BoxDomain::from_bounds(&[(-0.25, 1.25, 1537)]).unwrap();
        let f = F::OneDExtremalB { alpha: -2.0 }.sample(&d).unwrap();
        assert_eq!(f.infinite_count(), 1);
        let est = integrate(&f);
        // Truth: integral of x^(-1/2) over (0,1) is 2; the inverse-sqrt
        // singularity converges slowly, so the tolerance is loose.
        assert!((est.value - 2.0).abs() < 0.1, "got {}", est.value);
    }

    #[test]
    fn integration_is_linear_to_roundoff() {
        let d = BoxDomain::centered(1, 5.0, 129).unwrap();
        let f = F::Gaussian {
            center: vec![0.4],
            width: 1.0,
        }
        .sample(&d)
        .unwrap();
        let g = F::AbsExp { dim: 1 }.sample(&d).unwrap();
        let combo = GridFunction::linear_combination(2.0, &f, 3.0, &g).unwrap();
        let lhs = integrate(&combo).value;
        let rhs = 2.0 * integrate(&f).value + 3.0 * integrate(&g).value;
        assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn integration_is_monotone() {
        let d = BoxDomain::centered(1, 5.0, 65).unwrap();
        let f = F::Gaussian {
            center: vec![0.0],
            width: 1.0,
        }
        .sample(&d)
        .unwrap();
        let g = GridFunction::linear_combination(1.0, &f, 0.25, &f).unwrap();
        assert!(integrate(&f).value <= integrate(&g).value);
    }

    #[test]
    fn superlevel_volumes_match_known_sets() {
        let d = BoxDomain::from_bounds(&[(-1.0, 30.0, 1025)]).unwrap();
        let f = F::OrthantExp { dim: 1 }.sample(&d).unwrap();
        let h = d.axis(0).spacing();
        // {e^{-x} > e^{-1}, x >= 0} = [0, 1).
        let v = superlevel_volume(&f, (-1.0f64).exp()).unwrap();
        assert!((v - 1.0).abs() <= 2.0 * h, "got {v}");

        let g = F::Gaussian {
            center: vec![0.0],
            width: 1.0,
        }
        .sample(&BoxDomain::centered(1, 5.0, 129).unwrap())
        .unwrap();
        assert_eq!(superlevel_volume(&g, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn simplex_superlevel_area_is_half() {
        let d = BoxDomain::from_bounds(&[(-0.5, 1.5, 65), (-0.5, 1.5, 65)]).unwrap();
        let f = F::Indicator {
            body: Polytope::standard_simplex(2).unwrap(),
        }
        .sample(&d)
        .unwrap();
        let h = d.axis(0).spacing();
        let v = superlevel_volume(&f, 0.5).unwrap();
        assert!((v - 0.5).abs() <= 2.0 * h, "got {v}");
    }

    #[test]
    fn layer_cake_tracks_integrate() {
        let d = BoxDomain::from_bounds(&[(-1.0, 30.0, 2049)]).unwrap();
        let f = F::OrthantExp { dim: 1 }.sample(&d).unwrap();
        let levels = geometric_levels(1.0, 1e-6, 64);
        let lc = layer_cake(&f, &levels).unwrap();
        let direct = integrate(&f).value;
        assert!((lc - direct).abs() < 0.02 * direct, "{lc} vs {direct}");
    }

    #[test]
    fn layer_cake_on_a_constant_box_function() {
        let d = BoxDomain::from_bounds(&[(0.0, 2.0, 33)]).unwrap();
        let f = GridFunction::from_fn(d, |_| ExtNonNeg::new(0.75).unwrap()).unwrap();
        let levels = vec![0.75, 0.5, 0.25, 0.1];
        let lc: f64 = layer_cake(&f, &levels).unwrap();
        // The superlevel volume is 2 strictly below 0.75 and 0 at it, so the
        // top trapezoid halves the jump: (0.25)(1) + (0.25 + 0.15)(2) + 0.2.
        assert!((lc - 1.25).abs() < 1e-12, "got {lc}");
    }

    #[test]
    fn layer_cake_is_exact_for_a_tent() {
        // f(x) = 1 - |x| has superlevel volume 2(1 - s), linear in s, so
        // every trapezoid is exact; only cell rounding of the volumes and
        // the rectangle below the smallest level remain.
        let d = BoxDomain::centered(1, 1.0, 129).unwrap();
        let f = GridFunction::from_fn(d.clone(), |x: &[f64]| {
            ExtNonNeg::new((1.0 - x[0].abs()).max(0.0)).unwrap()
        })
        .unwrap();
        let levels = geometric_levels(1.0, 1e-6, 64);
        let lc: f64 = layer_cake(&f, &levels).unwrap();
        let h = d.axis(0).spacing();
        assert!((lc - 1.0).abs() <= 2.0 * h, "got {lc}");
    }

    #[test]
    fn level_grids_must_decrease() {
        let d = BoxDomain::from_bounds(&[(0.0, 1.0, 9)]).unwrap();
        let f = GridFunction::from_fn(d, |_| ExtNonNeg::new(1.0).unwrap()).unwrap();
        assert!(layer_cake(&f, &[0.5, 0.5]).is_err());
        assert!(layer_cake(&f, &[]).is_err());
    }
}
