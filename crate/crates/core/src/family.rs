//! Closed-form function families and their exact grid sampling.
//!
//! Sampling is node-wise exact, and families with polyhedral support also
//! attach per-node coverage fractions: the share of each node's cell inside
//! the support, computed by exact halfspace clipping. Quadrature uses these
//! to integrate jump discontinuities without first-order boundary bias.

use crate::body::clip::{clipped_box_volume, Halfspace};
use crate::body::Polytope;
use crate::grid::{BoxDomain, GridFunction};
use crate::scalar::{real, Real};
use crate::value::ExtNonNeg;
use crate::{Error, Result};

/// A function given in closed form, exact at any point.
#[derive(Clone, Debug)]
pub enum AnalyticFamily<R: Real> {
    /// `exp(-(x_1 + ... + x_n))` on the nonnegative orthant, 0 elsewhere.
    OrthantExp { dim: usize },
    /// `exp(-(|x_1| + ... + |x_n|))` everywhere.
    AbsExp { dim: usize },
    /// `exp(-|x - center|^2 / (2 width^2))`.
    Gaussian { center: Vec<R>, width: R },
    /// Indicator of a polytope (1 inside, 0 outside).
    Indicator { body: Polytope<R> },
    /// `(1 + x)^(1/alpha)` on `x >= 0`, 0 elsewhere; needs `alpha` in (-1, 0).
    OneDExtremalA { alpha: R },
    /// `x^(1/alpha)` on `(0, 1]`, `+inf` at 0, 0 elsewhere; needs `alpha <= -1`.
    OneDExtremalB { alpha: R },
    /// `exp(-h_K(x))` for the support function of a polytope.
    SupportExp { body: Polytope<R> },
    /// `scale * inner(matrix x + shift)` with an invertible matrix
    /// (row-major `dim x dim`).
    AffineImage {
        inner: Box<AnalyticFamily<R>>,
        matrix: Vec<R>,
        shift: Vec<R>,
        scale: R,
    },
}

impl<R: Real> AnalyticFamily<R> {
    pub fn dim(&self) -> usize {
        match self {
            Self::OrthantExp { dim } | Self::AbsExp { dim } => *dim,
            Self::Gaussian { center, .. } => center.len(),
            Self::Indicator { body } | Self::SupportExp { body } => body.dim(),
            Self::OneDExtremalA { .. } | Self::OneDExtremalB { .. } => 1,
            Self::AffineImage { shift, .. } => shift.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::OrthantExp { dim } | Self::AbsExp { dim } => {
                if !(1..=3).contains(dim) {
                    return Err(Error::UnsupportedDimension(*dim));
                }
            }
            Self::Gaussian { center, width } => {
                if !(1..=3).contains(&center.len()) {
                    return Err(Error::UnsupportedDimension(center.len()));
                }
                if center.iter().any(|c| !c.is_finite())
                    || !width.is_finite()
                    || *width <= R::zero()
                {
                    return Err(Error::BadFamilyParameter);
                }
            }
            Self::Indicator { .. } | Self::SupportExp { .. } => {}
            Self::OneDExtremalA { alpha } => {
                if !alpha.is_finite() || *alpha <= -R::one() || *alpha >= R::zero() {
                    return Err(Error::BadFamilyParameter);
                }
            }
            Self::OneDExtremalB { alpha } => {
                if !alpha.is_finite() || *alpha > -R::one() {
                    return Err(Error::BadFamilyParameter);
                }
            }
            Self::AffineImage {
                inner,
                matrix,
                shift,
                scale,
            } => {
                inner.validate()?;
                let n = shift.len();
                if inner.dim() != n {
                    return Err(Error::DimensionMismatch);
                }
                if matrix.len() != n * n {
                    return Err(Error::DimensionMismatch);
                }
                if matrix.iter().any(|c| !c.is_finite())
                    || shift.iter().any(|c| !c.is_finite())
                    || !scale.is_finite()
                    || *scale <= R::zero()
                {
                    return Err(Error::BadFamilyParameter);
                }
                if det(matrix, n).abs() <= real::<R>(1e-12) {
                    return Err(Error::SingularMap);
                }
            }
        }
        Ok(())
    }

    /// Exact closed-form value at a point.
    pub fn value(&self, x: &[R]) -> ExtNonNeg<R> {
        match self {
            Self::OrthantExp { .. } => {
                if x.iter().any(|&c| c < R::zero()) {
                    ExtNonNeg::zero()
                } else {
                    let s = x.iter().fold(R::zero(), |acc, &c| acc + c);
                    ExtNonNeg::new_unchecked((-s).exp())
                }
            }
            Self::AbsExp { .. } => {
                let s = x.iter().fold(R::zero(), |acc, &c| acc + c.abs());
                ExtNonNeg::new_unchecked((-s).exp())
            }
            Self::Gaussian { center, width } => {
                let mut q = R::zero();
                for (&c, &xc) in center.iter().zip(x.iter()) {
                    q = q + (xc - c) * (xc - c);
                }
                let two = real::<R>(2.0);
                ExtNonNeg::new_unchecked((-q / (two * *width * *width)).exp())
            }
            Self::Indicator { body } => {
                if body.contains(x, real::<R>(1e-12)) {
                    ExtNonNeg::new_unchecked(R::one())
                } else {
                    ExtNonNeg::zero()
                }
            }
            Self::OneDExtremalA { alpha } => {
                if x[0] < R::zero() {
                    ExtNonNeg::zero()
                } else {
                    ExtNonNeg::new_unchecked((R::one() + x[0]).powf(alpha.recip()))
                }
            }
            Self::OneDExtremalB { alpha } => {
                if x[0] < R::zero() || x[0] > R::one() {
                    ExtNonNeg::zero()
                } else if x[0] == R::zero() {
                    ExtNonNeg::infinity()
                } else {
                    ExtNonNeg::new_unchecked(x[0].powf(alpha.recip()))
                }
            }
            Self::SupportExp { body } => ExtNonNeg::new_unchecked((-body.support(x)).exp()),
            Self::AffineImage {
                inner,
                matrix,
                shift,
                scale,
            } => {
                let y = apply_affine(matrix, shift, x);
                let v = inner.value(&y);
                if v.is_infinite() {
                    ExtNonNeg::infinity()
                } else {
                    ExtNonNeg::new_unchecked(*scale * v.value())
                }
            }
        }
    }

    /// The support as an intersection of halfspaces, or `None` when the
    /// support is all of space.
    pub fn support_halfspaces(&self) -> Option<Vec<Halfspace<R>>> {
        match self {
            Self::OrthantExp { dim } => {
                let mut hs = Vec::with_capacity(*dim);
                for i in 0..*dim {
                    let mut n = vec![R::zero(); *dim];
                    n[i] = -R::one();
                    hs.push(Halfspace::new(n, R::zero()));
                }
                Some(hs)
            }
            Self::AbsExp { .. } | Self::Gaussian { .. } | Self::SupportExp { .. } => None,
            Self::Indicator { body } => Some(body.facets()),
            Self::OneDExtremalA { .. } => {
                Some(vec![Halfspace::new(vec![-R::one()], R::zero())])
            }
            Self::OneDExtremalB { .. } => Some(vec![
                Halfspace::new(vec![-R::one()], R::zero()),
                Halfspace::new(vec![R::one()], R::one()),
            ]),
            Self::AffineImage {
                inner,
                matrix,
                shift,
                ..
            } => {
                // {x : A x + b in supp(inner)}: pull each <n, y> <= c back to
                // <A^T n, x> <= c - <n, b>.
                let hs = inner.support_halfspaces()?;
                let n = shift.len();
                Some(
                    hs.into_iter()
                        .map(|h| {
                            let mut pulled = vec![R::zero(); n];
                            for (j, p) in pulled.iter_mut().enumerate() {
                                for i in 0..n {
                                    *p = *p + matrix[i * n + j] * h.normal[i];
                                }
                            }
                            let mut off = h.offset;
                            for i in 0..n {
                                off = off - h.normal[i] * shift[i];
                            }
                            Halfspace::new(pulled, off)
                        })
                        .collect(),
                )
            }
        }
    }

    /// Samples onto a grid, attaching exact coverage fractions when the
    /// support is polyhedral.
    pub fn sample(&self, domain: &BoxDomain<R>) -> Result<GridFunction<R>> {
        self.validate()?;
        if self.dim() != domain.dim() {
            return Err(Error::DimensionMismatch);
        }
        let values: Vec<ExtNonNeg<R>> =
            domain.iter_nodes().map(|(_, x)| self.value(&x)).collect();
        let mut f = GridFunction::from_values(domain.clone(), values)?;
        if let Some(hs) = self.support_halfspaces() {
            f = f.with_cover(support_coverage(domain, &hs))?;
        }
        Ok(f)
    }
}

fn apply_affine<R: Real>(matrix: &[R], shift: &[R], x: &[R]) -> Vec<R> {
    let n = shift.len();
    (0..n)
        .map(|i| {
            let mut acc = shift[i];
            for j in 0..n {
                acc = acc + matrix[i * n + j] * x[j];
            }
            acc
        })
        .collect()
}

/// Determinant of a row-major `n x n` matrix, `n <= 3`.
pub fn det<R: Real>(m: &[R], n: usize) -> R {
    match n {
        1 => m[0],
        2 => m[0] * m[3] - m[1] * m[2],
        3 => {
            m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
        }
        _ => panic!("determinant only defined for n <= 3"),
    }
}

/// Per-node fraction of the node's cell (clipped to the box) inside the
/// halfspace intersection. Exact: aligned constraints reduce to interval
/// arithmetic per axis, the rest fall back to polytope clipping of the few
/// boundary cells.
pub fn support_coverage<R: Real>(domain: &BoxDomain<R>, halfspaces: &[Halfspace<R>]) -> Vec<R> {
    let d = domain.dim();
    let half = real::<R>(0.5);
    let separable = halfspaces
        .iter()
        .all(|h| h.normal.iter().filter(|c| **c != R::zero()).count() == 1);

    let n = domain.node_count();
    let mut out = Vec::with_capacity(n);
    for flat in 0..n {
        let m = domain.multi_of(flat);
        let mut lo = [R::zero(); 3];
        let mut hi = [R::zero(); 3];
        let mut cell_vol = R::one();
        for k in 0..d {
            let ax = domain.axis(k);
            let h = ax.spacing();
            let c = ax.coord(m[k]);
            lo[k] = (c - half * h).max(ax.lower());
            hi[k] = (c + half * h).min(ax.upper());
            cell_vol = cell_vol * (hi[k] - lo[k]);
        }

        if separable {
            let mut frac = R::one();
            for k in 0..d {
                let mut a = lo[k];
                let mut b = hi[k];
                for hs in halfspaces {
                    let nk = hs.normal[k];
                    if nk == R::zero() {
                        continue;
                    }
                    let bound = hs.offset / nk;
                    if nk > R::zero() {
                        b = b.min(bound);
                    } else {
                        a = a.max(bound);
                    }
                }
                let len = (b - a).max(R::zero());
                frac = frac * len / (hi[k] - lo[k]);
            }
            out.push(frac);
            continue;
        }

        // Interval classification: fully inside, fully outside, or clip.
        let mut inside_all = true;
        let mut outside_some = false;
        for hs in halfspaces {
            let mut dot_min = R::zero();
            let mut dot_max = R::zero();
            for k in 0..d {
                let (a, b) = (hs.normal[k] * lo[k], hs.normal[k] * hi[k]);
                dot_min = dot_min + a.min(b);
                dot_max = dot_max + a.max(b);
            }
            if dot_max > hs.offset {
                inside_all = false;
            }
            if dot_min >= hs.offset {
                outside_some = true;
                break;
            }
        }
        if outside_some {
            out.push(R::zero());
        } else if inside_all {
            out.push(R::one());
        } else {
            let v = clipped_box_volume(&lo[..d], &hi[..d], halfspaces)
                .unwrap_or(R::zero());
            out.push((v / cell_vol).max(R::zero()).min(R::one()));
        }
    }
    out
}
