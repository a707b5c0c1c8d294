//! Discrete Legendre conjugation and the difference function.
//!
//! The conjugate here is always the max over grid nodes of `<p,x> - v(x)`,
//! computed one axis at a time. Each per-line transform keeps only the upper
//! convex hull of `(x, g)` and walks it with a second pointer as `p`
//! increases, so a full conjugation costs about one pass per axis instead of
//! a node-by-node max.
//!
//! Three routes lead to the difference function `z -> sup_x M(f(x), f(x-2z))`:
//! a direct scan over snapped pairs (any concavity regime), conjugation of
//! the log or power transform (zero and finite negative exponents), and a
//! superlevel-set construction through halved difference bodies (min regime).

use std::cmp::Ordering;

use crate::alpha::{mean_alpha_symmetric, Alpha, AlphaRegime};
use crate::body::clip::Halfspace;
use crate::body::Polytope;
use crate::grid::{is_alpha_concave, Axis, BoxDomain, ConcavityReport, GridFunction, ScalarField};
use crate::quad::geometric_levels;
use crate::scalar::{real, Real};
use crate::value::ExtNonNeg;
use crate::{Error, Result};

/// A conjugate sampled on its dual grid; structurally just a field.
pub type ConjugateGrid<R> = ScalarField<R>;

/// One factorized sweep: replaces primal axis `k` by `dual`, computing per
/// line the upper envelope value `max_i (p * x_i + g_i)`.
fn sweep_axis<R: Real>(g: &ScalarField<R>, k: usize, dual: &Axis<R>) -> Result<ScalarField<R>> {
    let in_domain = g.domain();
    let shape = in_domain.shape();
    let d = shape.len();
    let nk = shape[k];
    let pk = dual.count();
    let inner: usize = shape[k + 1..].iter().product();
    let outer: usize = shape[..k].iter().product();

    let xs: Vec<R> = (0..nk).map(|i| in_domain.axis(k).coord(i)).collect();
    let ps: Vec<R> = (0..pk).map(|j| dual.coord(j)).collect();

    let mut out_axes: Vec<Axis<R>> = (0..d).map(|j| in_domain.axis(j).clone()).collect();
    out_axes[k] = dual.clone();
    let out_domain = BoxDomain::new(out_axes)?;
    let mut out = vec![R::neg_infinity(); out_domain.node_count()];

    // Hull stack reused across lines; entries are (x, g) pairs.
    let mut hull: Vec<(R, R)> = Vec::with_capacity(nk);
    for o in 0..outer {
        for r in 0..inner {
            let base_in = o * nk * inner + r;
            hull.clear();
            for (i, &x) in xs.iter().enumerate() {
                let gi = g.value(base_in + i * inner);
                if gi == R::neg_infinity() {
                    continue;
                }
                while hull.len() >= 2 {
                    let (xa, ga) = hull[hull.len() - 2];
                    let (xb, gb) = hull[hull.len() - 1];
                    // Pop the middle point when it sits on or below the
                    // chord to the incoming one (upper hull keeps peaks).
                    if (xb - xa) * (gi - ga) - (gb - ga) * (x - xa) >= R::zero() {
                        hull.pop();
                    } else {
                        break;
                    }
                }
                hull.push((x, gi));
            }
            let base_out = o * pk * inner + r;
            if hull.is_empty() {
                continue;
            }
            // The maximizing vertex index is nondecreasing in p, so one
            // forward pointer serves the whole ascending dual line.
            let mut j = 0usize;
            for (jp, &p) in ps.iter().enumerate() {
                while j + 1 < hull.len()
                    && p * hull[j + 1].0 + hull[j + 1].1 >= p * hull[j].0 + hull[j].1
                {
                    j += 1;
                }
                out[base_out + jp * inner] = p * hull[j].0 + hull[j].1;
            }
        }
    }
    ScalarField::new(out_domain, out)
}

/// Discrete Legendre conjugate `v*(p) = max_x (<p,x> - v(x))` over the nodes
/// of `v`, evaluated at the nodes of `dual`. `+inf` values drop out of the
/// max; a field without finite values, or one taking `-inf`, is rejected.
pub fn legendre<R: Real>(v: &ScalarField<R>, dual: &BoxDomain<R>) -> Result<ConjugateGrid<R>> {
    if v.domain().dim() != dual.dim() {
        return Err(Error::DimensionMismatch);
    }
    if v.values().iter().any(|&x| x == R::neg_infinity()) {
        return Err(Error::MinusInfiniteValue);
    }
    if v.values().iter().all(|&x| x == R::infinity()) {
        return Err(Error::AllInfinite);
    }
    let negated: Vec<R> = v.values().iter().map(|&x| -x).collect();
    let mut g = ScalarField::new(v.domain().clone(), negated)?;
    for k in 0..dual.dim() {
        g = sweep_axis(&g, k, dual.axis(k))?;
    }
    Ok(g)
}

fn axis_lipschitz<R: Real>(v: &ScalarField<R>, k: usize) -> R {
    let domain = v.domain();
    let shape = domain.shape();
    let strides = domain.strides();
    let h = domain.axis(k).spacing();
    let mut lip = R::zero();
    for flat in 0..domain.node_count() {
        let m = domain.multi_of(flat);
        if m[k] + 1 >= shape[k] {
            continue;
        }
        let a = v.value(flat);
        let b = v.value(flat + strides[k]);
        if a.is_finite() && b.is_finite() {
            lip = lip.max((b - a).abs() / h);
        }
    }
    lip
}

/// A symmetric dual box sized from the finite difference quotients of `v`:
/// per axis the slope range `[-Lip, Lip]` padded by about 15%, with the node
/// counts given (odd, so that 0 and both `+-Lip` land on nodes up to
/// roundoff). A constant axis falls back to `[-1, 1]`.
pub fn lipschitz_dual_domain<R: Real>(
    v: &ScalarField<R>,
    counts: &[usize],
) -> Result<BoxDomain<R>> {
    let d = v.domain().dim();
    if counts.len() != d {
        return Err(Error::DimensionMismatch);
    }
    let mut axes = Vec::with_capacity(d);
    for (k, &count) in counts.iter().enumerate() {
        if count < 3 || count % 2 == 0 {
            return Err(Error::BadAxis);
        }
        let lip = axis_lipschitz(v, k);
        let bound = if lip > R::zero() {
            let q = (count - 1) / 2;
            let j = ((q as f64) / 1.15).floor().max(1.0);
            lip * real::<R>(q as f64) / real::<R>(j)
        } else {
            R::one()
        };
        axes.push(Axis::new(-bound, bound, count)?);
    }
    BoxDomain::new(axes)
}

/// Largest one-sided biconjugation defect `max (v - v**)` over finite nodes
/// of `v`; zero exactly when `v` equals its convex minorant on the grid.
pub fn legendre_involution_gap<R: Real>(v: &ScalarField<R>) -> Result<R> {
    let counts: Vec<usize> = (0..v.domain().dim())
        .map(|k| {
            let c = v.domain().axis(k).count();
            if c % 2 == 0 {
                c + 1
            } else {
                c
            }
        })
        .collect();
    let dual = lipschitz_dual_domain(v, &counts)?;
    let vs = legendre(v, &dual)?;
    let vss = legendre(&vs, v.domain())?;
    let mut gap = R::zero();
    for (a, b) in v.values().iter().zip(vss.values()) {
        if a.is_finite() {
            gap = gap.max(*a - *b);
        }
    }
    Ok(gap)
}

/// Brute infimal convolution oracle: at each output node `z`, the min of
/// `(v0(x) + v1(y))/2` over node pairs whose midpoint `(x+y)/2` lies within
/// half an output cell of `z`. Quadratic cost; for cross-checks only.
pub fn inf_convolution_brute<R: Real>(
    v0: &ScalarField<R>,
    v1: &ScalarField<R>,
    out: &BoxDomain<R>,
) -> Result<ScalarField<R>> {
    let d = out.dim();
    if v0.domain().dim() != d || v1.domain().dim() != d {
        return Err(Error::DimensionMismatch);
    }
    let dom1 = v1.domain();
    let strides1 = dom1.strides();
    let shape1 = dom1.shape();
    let half = real::<R>(0.5);
    let guard = half * (R::one() + real::<R>(1e-9));
    let mut vals = Vec::with_capacity(out.node_count());
    let mut cand: Vec<Vec<usize>> = vec![Vec::new(); d];
    for (_, z) in out.iter_nodes() {
        let mut best = R::infinity();
        for (xf, x) in v0.domain().iter_nodes() {
            let a = v0.value(xf);
            if a == R::infinity() {
                continue;
            }
            let mut feasible = true;
            for k in 0..d {
                cand[k].clear();
                let ax = dom1.axis(k);
                let target = real::<R>(2.0) * z[k] - x[k];
                let center = ((target - ax.lower()) / ax.spacing())
                    .round()
                    .max(R::zero())
                    .to_f64()
                    .unwrap() as usize;
                let tol = guard * out.axis(k).spacing();
                let lo = center.saturating_sub(2);
                let hi = (center + 2).min(shape1[k] - 1);
                for i in lo..=hi {
                    let mid = half * (x[k] + ax.coord(i));
                    if (mid - z[k]).abs() <= tol {
                        cand[k].push(i);
                    }
                }
                if cand[k].is_empty() {
                    feasible = false;
                    break;
                }
            }
            if !feasible {
                continue;
            }
            // Product over the per-axis candidate lists (each at most 3).
            let mut combo = vec![0usize; d];
            loop {
                let mut yf = 0usize;
                for k in 0..d {
                    yf += cand[k][combo[k]] * strides1[k];
                }
                let b = v1.value(yf);
                if b < R::infinity() {
                    best = best.min(half * (a + b));
                }
                let mut k = d;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    combo[k] += 1;
                    if combo[k] < cand[k].len() {
                        break;
                    }
                    combo[k] = 0;
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if k == usize::MAX {
                    break;
                }
            }
        }
        vals.push(best);
    }
    ScalarField::new(out.clone(), vals)
}

/// Brute difference oracle in log space: `min_x (v(x) + v(y))/2` with `y`
/// the node within half a cell of `x - 2z`, or `+inf` when no pair exists.
pub fn delta_v_brute<R: Real>(v: &ScalarField<R>, out: &BoxDomain<R>) -> Result<ScalarField<R>> {
    let d = out.dim();
    if v.domain().dim() != d {
        return Err(Error::DimensionMismatch);
    }
    let domain = v.domain();
    let strides = domain.strides();
    let two = real::<R>(2.0);
    let half = real::<R>(0.5);
    let mut vals = Vec::with_capacity(out.node_count());
    for (_, z) in out.iter_nodes() {
        let mut best = R::infinity();
        for (xf, x) in domain.iter_nodes() {
            let a = v.value(xf);
            if a == R::infinity() {
                continue;
            }
            let mut yf = 0usize;
            let mut ok = true;
            for k in 0..d {
                match domain.axis(k).snap(x[k] - two * z[k]) {
                    Some(i) => yf += i * strides[k],
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let b = v.value(yf);
            if b < R::infinity() {
                best = best.min(half * (a + b));
            }
        }
        vals.push(best);
    }
    ScalarField::new(out.clone(), vals)
}

fn reversed_values<R: Real>(f: &ScalarField<R>) -> Vec<R> {
    let domain = f.domain();
    let shape = domain.shape();
    let strides = domain.strides();
    let d = domain.dim();
    let n = domain.node_count();
    let mut out = vec![R::zero(); n];
    for flat in 0..n {
        let m = domain.multi_of(flat);
        let mut rev = 0usize;
        for k in 0..d {
            rev += (shape[k] - 1 - m[k]) * strides[k];
        }
        out[flat] = f.value(rev);
    }
    out
}

/// Difference transform in log space via double conjugation:
/// `delta v = ((v* + v* o reflect)/2)*`, evaluated on `out`. The dual grid
/// comes from the Lipschitz bounds of `v`, so for a potential that is finite
/// across its box the outer max is attained inside it. A potential with an
/// infinite region (a constrained support) can need a wider dual box than
/// its slopes suggest; use [`delta_v_on_dual`] with an explicit box then.
pub fn delta_v<R: Real>(v: &ScalarField<R>, out: &BoxDomain<R>) -> Result<ScalarField<R>> {
    let counts: Vec<usize> = (0..v.domain().dim())
        .map(|k| {
            let c = v.domain().axis(k).count();
            if c % 2 == 0 {
                c + 1
            } else {
                c
            }
        })
        .collect();
    let dual = lipschitz_dual_domain(v, &counts)?;
    delta_v_on_dual(v, out, &dual)
}

/// [`delta_v`] with the intermediate dual grid chosen by the caller. The
/// result is exact up to conjugation rounding whenever the dual box covers
/// every slope the symmetrized conjugate attains on `out`; it degrades to a
/// lower bound of the true transform when the box clips that range. The dual
/// box must be point-symmetric about the origin, since the reflection in the
/// symmetrization step is realized by index reversal.
pub fn delta_v_on_dual<R: Real>(
    v: &ScalarField<R>,
    out: &BoxDomain<R>,
    dual: &BoxDomain<R>,
) -> Result<ScalarField<R>> {
    for k in 0..dual.dim() {
        if dual.axis(k).lower() + dual.axis(k).upper() != R::zero() {
            return Err(Error::BadAxis);
        }
    }
    let vs = legendre(v, dual)?;
    let rev = reversed_values(&vs);
    let half = real::<R>(0.5);
    let sym: Vec<R> = vs
        .values()
        .iter()
        .zip(rev.iter())
        .map(|(&a, &b)| half * (a + b))
        .collect();
    let s = ScalarField::new(dual.clone(), sym)?;
    legendre(&s, out)
}

/// How a difference function gets computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DifferenceRoute {
    /// Max of symmetric means over snapped node pairs; any regime.
    Direct,
    /// Double Legendre conjugation of the log (or power) transform; zero
    /// and finite negative exponents.
    Conjugate,
    /// Halved difference bodies of superlevel hulls; min regime only.
    LevelSet,
}

/// The default output box: per axis, the primal range recentered at the
/// origin with the same node count, which also preserves the spacing.
pub fn difference_domain<R: Real>(primal: &BoxDomain<R>) -> BoxDomain<R> {
    let half = real::<R>(0.5);
    let axes: Vec<Axis<R>> = (0..primal.dim())
        .map(|k| {
            let ax = primal.axis(k);
            let w = half * (ax.upper() - ax.lower());
            Axis::new(-w, w, ax.count()).expect("primal axis is valid")
        })
        .collect();
    BoxDomain::new(axes).expect("primal domain is valid")
}

fn direct_difference<R: Real>(f: &GridFunction<R>, alpha: Alpha<R>) -> Result<GridFunction<R>> {
    let domain = f.domain();
    let d = domain.dim();
    let strides = domain.strides();
    let out = difference_domain(domain);
    let two = real::<R>(2.0);
    let coords: Vec<Vec<R>> = domain.iter_nodes().map(|(_, x)| x).collect();
    let mut vals = Vec::with_capacity(out.node_count());
    for (_, z) in out.iter_nodes() {
        let mut best = ExtNonNeg::<R>::zero();
        for (xf, x) in coords.iter().enumerate() {
            let mut yf = 0usize;
            let mut ok = true;
            for k in 0..d {
                match domain.axis(k).snap(x[k] - two * z[k]) {
                    Some(i) => yf += i * strides[k],
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let m = mean_alpha_symmetric(f.value(xf), f.value(yf), alpha);
            if m.cmp_total(&best) == Ordering::Greater {
                best = m;
            }
        }
        vals.push(best);
    }
    GridFunction::from_values(out, vals)
}

fn conjugate_difference<R: Real>(f: &GridFunction<R>, alpha: Alpha<R>) -> Result<GridFunction<R>> {
    let out = difference_domain(f.domain());
    match alpha.regime() {
        AlphaRegime::Zero => {
            if f.infinite_count() > 0 {
                return Err(Error::RouteMismatch);
            }
            let v = f.log_field();
            let dv = delta_v(&v, &out)?;
            GridFunction::from_logs(out, dv.values().to_vec())
        }
        AlphaRegime::Finite(a) => {
            // f is alpha-concave exactly when u = f^alpha is convex, and the
            // power turns the sup of means into an infimal convolution.
            let uvals: Vec<R> = f.logs().iter().map(|&v| (-a * v).exp()).collect();
            let u = ScalarField::new(f.domain().clone(), uvals)?;
            let du = delta_v(&u, &out)?;
            let inv = a.recip();
            let vals = du
                .values()
                .iter()
                .map(|&w| ExtNonNeg::new(w.max(R::zero()).powf(inv)))
                .collect::<Result<Vec<_>>>()?;
            GridFunction::from_values(out, vals)
        }
        AlphaRegime::MinusInfinity => Err(Error::RouteMismatch),
    }
}

/// A min-regime difference function together with the level polytopes that
/// realize it: at each retained level `s`, half the difference body of the
/// hull of the superlevel nodes.
#[derive(Clone, Debug)]
pub struct LevelSetDifference<R: Real> {
    pub function: GridFunction<R>,
    /// Decreasing levels paired with their halved difference bodies.
    pub levels: Vec<(R, Polytope<R>)>,
}

fn half_difference_body<R: Real>(p: &Polytope<R>) -> Result<Polytope<R>> {
    let half = real::<R>(0.5);
    let verts = p.vertices();
    let mut pts = Vec::with_capacity(verts.len() * verts.len());
    for v in verts {
        for w in verts {
            pts.push(
                v.iter()
                    .zip(w.iter())
                    .map(|(&a, &b)| half * (a - b))
                    .collect::<Vec<R>>(),
            );
        }
    }
    Polytope::from_points(p.dim(), &pts)
}

/// Min-regime difference via superlevel sets: 64 geometric levels from the
/// finite sup down six decades, each realized as half the difference body of
/// the hull of its superlevel nodes. Levels whose node sets are not
/// full-dimensional are dropped. Each output node takes the largest retained
/// level whose body contains it (the bodies are nested, so a bisection
/// finds it).
pub fn level_set_difference<R: Real>(f: &GridFunction<R>) -> Result<LevelSetDifference<R>> {
    let domain = f.domain();
    let top = f.sup_finite()?;
    let mut levels: Vec<(R, Polytope<R>)> = Vec::new();
    let mut prev: Option<(Vec<usize>, Option<Polytope<R>>)> = None;
    for &s in geometric_levels(top, real::<R>(1e-6), 64)
        .iter()
        .filter(|&&s| s > R::zero())
    {
        let nodes: Vec<usize> = (0..domain.node_count())
            .filter(|&i| {
                let v = f.value(i);
                v.is_infinite() || v.value() >= s
            })
            .collect();
        let poly = match &prev {
            Some((pn, pp)) if *pn == nodes => pp.clone(),
            _ => {
                let pts: Vec<Vec<R>> = nodes.iter().map(|&i| domain.node(i)).collect();
                Polytope::from_points(domain.dim(), &pts)
                    .ok()
                    .and_then(|p| half_difference_body(&p).ok())
            }
        };
        if let Some(p) = &poly {
            levels.push((s, p.clone()));
        }
        prev = Some((nodes, poly));
    }
    if levels.is_empty() {
        return Err(Error::DegenerateBody);
    }

    let out = difference_domain(domain);
    let scale = (0..out.dim())
        .map(|k| out.axis(k).upper().abs())
        .fold(R::one(), |a, b| a.max(b));
    let tol = real::<R>(1e-9) * scale;
    // Facet lists are derived once per level; recomputing them inside the
    // per-node bisection would dominate the whole transform.
    let facet_sets: Vec<Vec<Halfspace<R>>> = levels.iter().map(|(_, p)| p.facets()).collect();
    let mut vals = Vec::with_capacity(out.node_count());
    for (_, z) in out.iter_nodes() {
        // Containment is monotone along the level list (bodies grow as the
        // level drops), so bisect for the first containing index.
        let mut lo = 0usize;
        let mut hi = levels.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            if facet_sets[mid].iter().all(|h| h.slack(&z) >= -tol) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let v = if lo < levels.len() {
            ExtNonNeg::new(levels[lo].0)?
        } else {
            ExtNonNeg::zero()
        };
        vals.push(v);
    }
    let function = GridFunction::from_values(out, vals)?;
    Ok(LevelSetDifference { function, levels })
}

/// The difference function of `f` at exponent `alpha` by the chosen route,
/// on the default recentered output box.
pub fn difference_function<R: Real>(
    f: &GridFunction<R>,
    alpha: Alpha<R>,
    route: DifferenceRoute,
) -> Result<GridFunction<R>> {
    match route {
        DifferenceRoute::Direct => direct_difference(f, alpha),
        DifferenceRoute::Conjugate => conjugate_difference(f, alpha),
        DifferenceRoute::LevelSet => match alpha.regime() {
            AlphaRegime::MinusInfinity => Ok(level_set_difference(f)?.function),
            _ => Err(Error::RouteMismatch),
        },
    }
}

/// Computes the difference function and tests its grid midpoint concavity
/// at the same exponent.
pub fn check_alpha_concavity_of_delta<R: Real>(
    f: &GridFunction<R>,
    alpha: Alpha<R>,
    route: DifferenceRoute,
    tol: R,
) -> Result<ConcavityReport<R>> {
    let delta = difference_function(f, alpha, route)?;
    Ok(is_alpha_concave(&delta, alpha, tol))
}
