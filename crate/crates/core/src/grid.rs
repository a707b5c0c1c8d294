//! Uniform tensor grids on closed boxes in dimension 1..=3 and the
//! extended-valued functions sampled on them.
//!
//! A `GridFunction` carries its values twice: as `[0, +inf]` numbers and as
//! the cached logs `v = -log f` (so `f = 0` maps to `v = +inf` exactly and
//! `f = +inf` to `v = -inf`). The log side is what conjugation and infimal
//! convolution work on. Nodes own cells for quadrature: an optional coverage
//! vector records, per node, the fraction of its cell inside the function's
//! support, so jump discontinuities integrate without first-order bias.

use crate::alpha::{mean_alpha_symmetric, Alpha};
use crate::scalar::{real, Real};
use crate::value::ExtNonNeg;
use crate::{Error, Result};

/// One grid axis: `count` equally spaced nodes from `lower` to `upper`.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis<R> {
    lower: R,
    upper: R,
    count: usize,
}

impl<R: Real> Axis<R> {
    pub fn new(lower: R, upper: R, count: usize) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) || !(lower < upper) || count < 2 {
            return Err(Error::BadAxis);
        }
        Ok(Axis {
            lower,
            upper,
            count,
        })
    }

    pub fn lower(&self) -> R {
        self.lower
    }

    pub fn upper(&self) -> R {
        self.upper
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> R {
        (self.upper - self.lower) / real::<R>((self.count - 1) as f64)
    }

    /// Coordinate of node `i`; always `lower + i*h` so alignment arguments
    /// about multiples of `h` hold in floating point too.
    pub fn coord(&self, i: usize) -> R {
        self.lower + real::<R>(i as f64) * self.spacing()
    }

    /// Nearest node to `x`, if `x` is within half a cell of one inside the
    /// axis range (with a relative guard so exact half-cell ties snap).
    pub fn snap(&self, x: R) -> Option<usize> {
        let h = self.spacing();
        let t = (x - self.lower) / h;
        let i = t.round();
        if i < -real::<R>(0.5) || i > real::<R>((self.count - 1) as f64) + real::<R>(0.5) {
            return None;
        }
        let i = i.max(R::zero()).min(real::<R>((self.count - 1) as f64));
        let idx = i.to_f64().unwrap() as usize;
        let guard = real::<R>(0.5) * (R::one() + real::<R>(1e-9));
        if (x - self.coord(idx)).abs() <= guard * h {
            Some(idx)
        } else {
            None
        }
    }
}

/// A box `[l_1, u_1] x ... x [l_n, u_n]` with per-axis uniform node grids,
/// flat-indexed in row-major (lexicographic) node order.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxDomain<R> {
    axes: Vec<Axis<R>>,
}

impl<R: Real> BoxDomain<R> {
    pub fn new(axes: Vec<Axis<R>>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 3 {
            return Err(Error::UnsupportedDimension(axes.len()));
        }
        Ok(BoxDomain { axes })
    }

    /// Convenience constructor from `(lower, upper, count)` triples.
    pub fn from_bounds(bounds: &[(R, R, usize)]) -> Result<Self> {
        let axes = bounds
            .iter()
            .map(|&(lo, hi, c)| Axis::new(lo, hi, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(axes)
    }

    /// A centered cube `[-half, half]^dim` with `count` nodes per axis.
    pub fn centered(dim: usize, half: R, count: usize) -> Result<Self> {
        Self::from_bounds(&vec![(-half, half, count); dim])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, k: usize) -> &Axis<R> {
        &self.axes[k]
    }

    pub fn axes(&self) -> &[Axis<R>] {
        &self.axes
    }

    pub fn node_count(&self) -> usize {
        self.axes.iter().map(Axis::count).product()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Axis::count).collect()
    }

    /// Row-major strides: the last axis varies fastest, so flat order equals
    /// lexicographic order on multi-indices.
    pub fn strides(&self) -> [usize; 3] {
        let mut s = [0usize; 3];
        let d = self.dim();
        let mut acc = 1usize;
        for k in (0..d).rev() {
            s[k] = acc;
            acc *= self.axes[k].count();
        }
        s
    }

    pub fn flat_of(&self, multi: &[usize]) -> usize {
        let s = self.strides();
        multi
            .iter()
            .enumerate()
            .map(|(k, &i)| i * s[k])
            .sum()
    }

    pub fn multi_of(&self, flat: usize) -> [usize; 3] {
        let mut m = [0usize; 3];
        let mut rest = flat;
        let s = self.strides();
        for k in 0..self.dim() {
            m[k] = rest / s[k];
            rest %= s[k];
        }
        m
    }

    /// Coordinates of a node by flat index.
    pub fn node(&self, flat: usize) -> Vec<R> {
        let m = self.multi_of(flat);
        (0..self.dim()).map(|k| self.axes[k].coord(m[k])).collect()
    }

    /// Product of the axis spacings.
    pub fn cell_volume(&self) -> R {
        self.axes
            .iter()
            .fold(R::one(), |acc, a| acc * a.spacing())
    }

    /// The box reflected through the origin, node for node.
    pub fn reflected(&self) -> Self {
        let axes = self
            .axes
            .iter()
            .map(|a| Axis {
                lower: -a.upper,
                upper: -a.lower,
                count: a.count,
            })
            .collect();
        BoxDomain { axes }
    }

    /// Exact structural equality of bounds and counts.
    pub fn same_grid(&self, other: &Self) -> bool {
        self == other
    }

    /// Iterates `(flat index, node coordinates)` in flat order.
    pub fn iter_nodes(&self) -> impl Iterator<Item = (usize, Vec<R>)> + '_ {
        (0..self.node_count()).map(move |i| (i, self.node(i)))
    }
}

/// A plain extended-real field on a grid: values in `[-inf, +inf]`, no NaN.
/// Carries log-values, conjugates, and partial transforms.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField<R> {
    domain: BoxDomain<R>,
    values: Vec<R>,
}

impl<R: Real> ScalarField<R> {
    pub fn new(domain: BoxDomain<R>, values: Vec<R>) -> Result<Self> {
        if values.len() != domain.node_count() {
            return Err(Error::DimensionMismatch);
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::NanValue);
        }
        Ok(ScalarField { domain, values })
    }

    pub fn from_fn(domain: BoxDomain<R>, mut f: impl FnMut(&[R]) -> R) -> Result<Self> {
        let values: Vec<R> = domain.iter_nodes().map(|(_, x)| f(&x)).collect();
        Self::new(domain, values)
    }

    pub fn domain(&self) -> &BoxDomain<R> {
        &self.domain
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn value(&self, flat: usize) -> R {
        self.values[flat]
    }

    /// Midpoint convexity along every axis line: for each interior node,
    /// `v(m) <= (v(x) + v(y))/2 + tol` over its axis-neighbor pairs, with
    /// `+inf` neighbors passing vacuously.
    pub fn is_grid_convex(&self, tol: R) -> bool {
        let d = self.domain.dim();
        let strides = self.domain.strides();
        let shape = self.domain.shape();
        let half = real::<R>(0.5);
        for flat in 0..self.values.len() {
            let m = self.domain.multi_of(flat);
            for k in 0..d {
                if m[k] == 0 || m[k] + 1 >= shape[k] {
                    continue;
                }
                let a = self.values[flat - strides[k]];
                let b = self.values[flat + strides[k]];
                let v = self.values[flat];
                if a == R::infinity() || b == R::infinity() {
                    continue;
                }
                if v == R::infinity() || v > half * (a + b) + tol {
                    return false;
                }
            }
        }
        true
    }
}

/// A nonnegative extended-valued function sampled on a box grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<R> {
    domain: BoxDomain<R>,
    values: Vec<ExtNonNeg<R>>,
    logs: Vec<R>,
    cover: Option<Vec<R>>,
}

impl<R: Real> GridFunction<R> {
    pub fn from_values(domain: BoxDomain<R>, values: Vec<ExtNonNeg<R>>) -> Result<Self> {
        if values.len() != domain.node_count() {
            return Err(Error::DimensionMismatch);
        }
        if values.iter().all(|v| v.is_zero()) {
            return Err(Error::TrivialFunction);
        }
        check_isolated_infinities(&domain, &values)?;
        let logs = values.iter().map(|v| v.neg_log()).collect();
        Ok(GridFunction {
            domain,
            values,
            logs,
            cover: None,
        })
    }

    pub fn from_fn(
        domain: BoxDomain<R>,
        mut f: impl FnMut(&[R]) -> ExtNonNeg<R>,
    ) -> Result<Self> {
        let values: Vec<ExtNonNeg<R>> = domain.iter_nodes().map(|(_, x)| f(&x)).collect();
        Self::from_values(domain, values)
    }

    /// Builds from log-values `v = -log f` (`+inf` means `f = 0`).
    pub fn from_logs(domain: BoxDomain<R>, logs: Vec<R>) -> Result<Self> {
        if logs.iter().any(|v| v.is_nan()) {
            return Err(Error::NanValue);
        }
        let values: Vec<ExtNonNeg<R>> = logs.iter().map(|&v| ExtNonNeg::from_neg_log(v)).collect();
        if values.iter().all(|v| v.is_zero()) {
            return Err(Error::TrivialFunction);
        }
        check_isolated_infinities(&domain, &values)?;
        if values.len() != domain.node_count() {
            return Err(Error::DimensionMismatch);
        }
        Ok(GridFunction {
            domain,
            values,
            logs,
            cover: None,
        })
    }

    /// Attaches per-node support coverage fractions in `[0, 1]`.
    pub fn with_cover(mut self, cover: Vec<R>) -> Result<Self> {
        if cover.len() != self.values.len() {
            return Err(Error::DimensionMismatch);
        }
        let tiny = real::<R>(1e-12);
        if cover
            .iter()
            .any(|&c| c.is_nan() || c < -tiny || c > R::one() + tiny)
        {
            return Err(Error::NegativeValue);
        }
        self.cover = Some(
            cover
                .into_iter()
                .map(|c| c.max(R::zero()).min(R::one()))
                .collect(),
        );
        Ok(self)
    }

    pub fn domain(&self) -> &BoxDomain<R> {
        &self.domain
    }

    pub fn values(&self) -> &[ExtNonNeg<R>] {
        &self.values
    }

    pub fn value(&self, flat: usize) -> ExtNonNeg<R> {
        self.values[flat]
    }

    /// Cached `-log f` values.
    pub fn logs(&self) -> &[R] {
        &self.logs
    }

    pub fn log(&self, flat: usize) -> R {
        self.logs[flat]
    }

    pub fn cover(&self) -> Option<&[R]> {
        self.cover.as_deref()
    }

    pub fn log_field(&self) -> ScalarField<R> {
        ScalarField {
            domain: self.domain.clone(),
            values: self.logs.clone(),
        }
    }

    pub fn infinite_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_infinite()).count()
    }

    /// Maximum value and the first (lexicographically smallest) node
    /// attaining it.
    pub fn sup_value(&self) -> (ExtNonNeg<R>, usize) {
        let mut best = self.values[0];
        let mut arg = 0usize;
        for (i, &v) in self.values.iter().enumerate().skip(1) {
            if v.cmp_total(&best) == std::cmp::Ordering::Greater {
                best = v;
                arg = i;
            }
        }
        (best, arg)
    }

    /// Largest finite value, or an error when every positive value is `+inf`.
    pub fn sup_finite(&self) -> Result<R> {
        let mut best: Option<R> = None;
        for v in &self.values {
            if v.is_finite() && !v.is_zero() {
                let x = v.value();
                best = Some(best.map_or(x, |b: R| b.max(x)));
            }
        }
        best.ok_or(Error::AllInfinite)
    }

    /// `x -> f(-x)` on the reflected domain: an exact node permutation.
    pub fn reflect(&self) -> Self {
        let domain = self.domain.reflected();
        let shape = self.domain.shape();
        let d = self.domain.dim();
        let n = self.values.len();
        let mut values = Vec::with_capacity(n);
        let mut logs = Vec::with_capacity(n);
        let mut cover = self.cover.as_ref().map(|_| Vec::with_capacity(n));
        for flat in 0..n {
            let m = domain.multi_of(flat);
            let mut src = [0usize; 3];
            for k in 0..d {
                src[k] = shape[k] - 1 - m[k];
            }
            let s = self.domain.flat_of(&src[..d]);
            values.push(self.values[s]);
            logs.push(self.logs[s]);
            if let (Some(c), Some(orig)) = (cover.as_mut(), self.cover.as_ref()) {
                c.push(orig[s]);
            }
        }
        GridFunction {
            domain,
            values,
            logs,
            cover,
        }
    }

    /// Nodewise `a*f + b*g` for `a, b >= 0` on one shared grid. Coverage must
    /// agree on both operands (it describes the grid cells, not the values).
    pub fn linear_combination(a: R, f: &Self, b: R, g: &Self) -> Result<Self> {
        if !f.domain.same_grid(&g.domain) {
            return Err(Error::DimensionMismatch);
        }
        if a < R::zero() || b < R::zero() {
            return Err(Error::NegativeValue);
        }
        if f.cover != g.cover {
            return Err(Error::DimensionMismatch);
        }
        let values: Vec<ExtNonNeg<R>> = f
            .values
            .iter()
            .zip(g.values.iter())
            .map(|(&x, &y)| {
                if x.is_infinite() || y.is_infinite() {
                    ExtNonNeg::infinity()
                } else {
                    ExtNonNeg::new_unchecked(a * x.value() + b * y.value())
                }
            })
            .collect();
        let mut out = Self::from_values(f.domain.clone(), values)?;
        if let Some(c) = f.cover.clone() {
            out = out.with_cover(c)?;
        }
        Ok(out)
    }
}

/// Rejects value vectors where two `+inf` nodes are adjacent along an axis.
fn check_isolated_infinities<R: Real>(
    domain: &BoxDomain<R>,
    values: &[ExtNonNeg<R>],
) -> Result<()> {
    if !values.iter().any(|v| v.is_infinite()) {
        return Ok(());
    }
    let strides = domain.strides();
    let shape = domain.shape();
    for (flat, v) in values.iter().enumerate() {
        if !v.is_infinite() {
            continue;
        }
        let m = domain.multi_of(flat);
        for k in 0..domain.dim() {
            if m[k] + 1 < shape[k] && values[flat + strides[k]].is_infinite() {
                return Err(Error::NonIsolatedInfinity);
            }
        }
    }
    Ok(())
}

/// Outcome of the midpoint concavity scan.
#[derive(Clone, Debug)]
pub struct ConcavityReport<R> {
    /// No pair exceeded the tolerance.
    pub ok: bool,
    /// Largest `mean - f(midpoint)` over all pairs (negative when concave
    /// with room to spare, `+inf` when a finite midpoint sits between two
    /// infinite endpoints).
    pub worst_gap: R,
    /// First violating `(x, midpoint, y)` triple in scan order, as flat
    /// node indices.
    pub witness: Option<(usize, usize, usize)>,
}

/// Midpoint test of alpha-concavity over every node pair whose midpoint is a
/// node: `f(m) >= M_alpha(f(x), f(y); 1/2) - tol * scale`, with `scale` the
/// largest finite node value.
pub fn is_alpha_concave<R: Real>(
    f: &GridFunction<R>,
    alpha: Alpha<R>,
    tol: R,
) -> ConcavityReport<R> {
    let domain = f.domain();
    let n = domain.node_count();
    let d = domain.dim();
    let strides = domain.strides();
    let multis: Vec<[usize; 3]> = (0..n).map(|i| domain.multi_of(i)).collect();
    let scale = f.sup_finite().unwrap_or(R::one());
    let slack = tol * scale;

    let mut worst = R::neg_infinity();
    let mut witness = None;
    for i in 0..n {
        let fi = f.value(i);
        if fi.is_zero() {
            continue;
        }
        for j in i..n {
            let fj = f.value(j);
            if fj.is_zero() {
                continue;
            }
            let mut mid = 0usize;
            let mut same_parity = true;
            for k in 0..d {
                let (a, b) = (multis[i][k], multis[j][k]);
                if (a ^ b) & 1 != 0 {
                    same_parity = false;
                    break;
                }
                mid += ((a + b) >> 1) * strides[k];
            }
            if !same_parity {
                continue;
            }
            let m = mean_alpha_symmetric(fi, fj, alpha);
            let fm = f.value(mid);
            let gap = if fm.is_infinite() {
                R::neg_infinity()
            } else if m.is_infinite() {
                R::infinity()
            } else {
                m.value() - fm.value()
            };
            if gap > worst {
                worst = gap;
            }
            if gap > slack && witness.is_none() {
                witness = Some((i, mid, j));
            }
        }
    }
    ConcavityReport {
        ok: witness.is_none(),
        worst_gap: worst,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::Alpha;

    type G = GridFunction<f64>;

    fn gaussian_1d(count: usize) -> G {
        let d = BoxDomain::from_bounds(&[(-3.0, 3.0, count)]).unwrap();
        G::from_fn(d, |x| ExtNonNeg::new((-x[0] * x[0] / 2.0).exp()).unwrap()).unwrap()
    }

    #[test]
    fn flat_order_is_lexicographic() {
        let d = BoxDomain::from_bounds(&[(0.0, 1.0, 3), (0.0, 1.0, 4)]).unwrap();
        assert_eq!(d.flat_of(&[0, 0]), 0);
        assert_eq!(d.flat_of(&[0, 3]), 3);
        assert_eq!(d.flat_of(&[1, 0]), 4);
        assert_eq!(d.multi_of(7)[..2], [1, 3]);
        assert_eq!(d.node(4), vec![0.5, 0.0]);
    }

    #[test]
    fn axis_snapping_honors_half_cell() {
        let a = Axis::new(0.0f64, 1.0, 5).unwrap(); // h = 0.25
        assert_eq!(a.snap(0.26), Some(1));
        assert_eq!(a.snap(0.125), Some(1)); // exact tie rounds away from zero
        assert_eq!(a.snap(-0.13), None);
        assert_eq!(a.snap(1.12), Some(4));
        assert_eq!(a.snap(1.2), None);
    }

    #[test]
    fn constructors_reject_trivial_and_clustered_infinity() {
        let d = BoxDomain::from_bounds(&[(0.0, 1.0, 4)]).unwrap();
        let zero = vec![ExtNonNeg::zero(); 4];
        assert!(matches!(
            G::from_values(d.clone(), zero),
            Err(Error::TrivialFunction)
        ));
        let vals = vec![
            ExtNonNeg::infinity(),
            ExtNonNeg::infinity(),
            ExtNonNeg::new(1.0).unwrap(),
            ExtNonNeg::zero(),
        ];
        assert!(matches!(
            G::from_values(d.clone(), vals),
            Err(Error::NonIsolatedInfinity)
        ));
        let ok = vec![
            ExtNonNeg::infinity(),
            ExtNonNeg::new(2.0).unwrap(),
            ExtNonNeg::infinity(),
            ExtNonNeg::zero(),
        ];
        assert!(G::from_values(d, ok).is_ok());
    }

    #[test]
    fn logs_are_consistent_including_ends() {
        let d = BoxDomain::from_bounds(&[(0.0, 1.0, 3)]).unwrap();
        let vals = vec![
            ExtNonNeg::zero(),
            ExtNonNeg::new(2.0).unwrap(),
            ExtNonNeg::infinity(),
        ];
        let f = G::from_values(d, vals).unwrap();
        assert_eq!(f.log(0), f64::INFINITY);
        assert_eq!(f.log(1), -(2.0f64.ln()));
        assert_eq!(f.log(2), f64::NEG_INFINITY);
        assert_eq!(f.value(1).value(), 2.0);
    }

    #[test]
    fn reflect_is_an_exact_involution() {
        let d = BoxDomain::from_bounds(&[(-1.0, 5.0, 7), (0.0, 2.0, 3)]).unwrap();
        let f = G::from_fn(d, |x| {
            ExtNonNeg::new((x[0] + 2.0 * x[1] + 7.0).abs()).unwrap()
        })
        .unwrap();
        let r = f.reflect();
        assert_eq!(r.domain().axis(0).lower(), -5.0);
        assert_eq!(r.domain().axis(0).upper(), 1.0);
        let rr = r.reflect();
        assert_eq!(rr.values(), f.values());
        assert_eq!(rr.domain(), f.domain());
        // Node-for-node: r(-x) = f(x) at a specific spot.
        let i = f.domain().flat_of(&[2, 1]);
        let x = f.domain().node(i);
        let j = r.domain().flat_of(&[4, 1]);
        assert_eq!(r.domain().node(j), vec![-x[0], -x[1]]);
        assert_eq!(r.value(j), f.value(i));
    }

    #[test]
    fn sup_breaks_ties_lexicographically() {
        let d = BoxDomain::from_bounds(&[(0.0, 1.0, 2), (0.0, 1.0, 2)]).unwrap();
        let one = ExtNonNeg::new(1.0).unwrap();
        let f = G::from_values(
            d,
            vec![ExtNonNeg::new(0.5).unwrap(), one, ExtNonNeg::new(0.25).unwrap(), one],
        )
        .unwrap();
        let (v, arg) = f.sup_value();
        assert_eq!(v, one);
        assert_eq!(arg, 1);
    }

    #[test]
    fn gaussian_is_log_concave_on_the_grid() {
        let f = gaussian_1d(41);
        let r = is_alpha_concave(&f, Alpha::zero(), 1e-12);
        assert!(r.ok, "worst gap {}", r.worst_gap);
        assert!(r.worst_gap <= 1e-12);
    }

    #[test]
    fn interior_dip_is_caught_with_witness() {
        let d = BoxDomain::from_bounds(&[(0.0, 1.0, 5)]).unwrap();
        let mut vals: Vec<ExtNonNeg<f64>> =
            (0..5).map(|_| ExtNonNeg::new(1.0).unwrap()).collect();
        vals[2] = ExtNonNeg::new(0.5).unwrap();
        let f = G::from_values(d, vals).unwrap();
        let r = is_alpha_concave(&f, Alpha::zero(), 1e-9);
        assert!(!r.ok);
        // First violation in scan order: endpoints 0 and 4, midpoint 2.
        assert_eq!(r.witness, Some((0, 2, 4)));
        assert!((r.worst_gap - 0.5).abs() < 1e-12);
    }

    #[test]
    fn indicator_of_an_interval_is_quasi_concave() {
        // Indicator of [0.25, 1.0] on [0, 1].
        let d = BoxDomain::from_bounds(&[(0.0, 1.0, 9)]).unwrap();
        let f = G::from_fn(d, |x| {
            if x[0] >= 0.25 {
                ExtNonNeg::new(1.0).unwrap()
            } else {
                ExtNonNeg::zero()
            }
        })
        .unwrap();
        assert!(is_alpha_concave(&f, Alpha::minus_infinity(), 0.0).ok);
    }

    #[test]
    fn concavity_is_monotone_in_alpha_on_a_gaussian() {
        let f = gaussian_1d(33);
        for a in [
            Alpha::zero(),
            Alpha::finite(-0.5).unwrap(),
            Alpha::finite(-2.0).unwrap(),
            Alpha::minus_infinity(),
        ] {
            assert!(is_alpha_concave(&f, a, 1e-12).ok, "failed at {a:?}");
        }
    }

    #[test]
    fn linear_combination_matches_nodewise_arithmetic() {
        let f = gaussian_1d(17);
        let g = {
            let d = f.domain().clone();
            G::from_fn(d, |x| ExtNonNeg::new((x[0]).cosh().recip()).unwrap()).unwrap()
        };
        let h = GridFunction::linear_combination(2.0, &f, 3.0, &g).unwrap();
        for i in 0..h.values().len() {
            let want = 2.0 * f.value(i).value() + 3.0 * g.value(i).value();
            assert!((h.value(i).value() - want).abs() < 1e-15);
        }
    }

    #[test]
    fn grid_convexity_check_accepts_quadratic_rejects_dip() {
        let d = BoxDomain::from_bounds(&[(-2.0, 2.0, 21)]).unwrap();
        let q = ScalarField::from_fn(d.clone(), |x| x[0] * x[0]).unwrap();
        assert!(q.is_grid_convex(1e-12));
        let mut vals = q.values().to_vec();
        vals[10] += 0.5;
        let bumped = ScalarField::new(d, vals).unwrap();
        assert!(!bumped.is_grid_convex(1e-12));
    }

    #[test]
    fn cover_fractions_are_validated_and_clamped() {
        let f = gaussian_1d(5);
        assert!(f.clone().with_cover(vec![0.5; 4]).is_err());
        assert!(f.clone().with_cover(vec![0.5, -0.2, 1.0, 1.0, 1.0]).is_err());
        let g = f.with_cover(vec![1.0, 1.0 + 1e-13, 0.0, 0.5, 1.0]).unwrap();
        assert_eq!(g.cover().unwrap()[1], 1.0);
    }
}
