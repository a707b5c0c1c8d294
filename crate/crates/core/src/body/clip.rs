//! Halfspace systems: vertex enumeration and clipped-cell volumes.
//!
//! Dimensions 1..=3 only, so brute-force enumeration over constraint pairs
//! and triples is exact and fast enough. Used for polytope intersection and
//! for measuring how much of a grid cell lies inside a polyhedral support.

use super::hull::{dot, hull_1d, hull_2d, hull_3d, hull3_volume, polygon_area};
use crate::scalar::{real, Real};
use crate::{Error, Result};

/// The closed halfspace `{ x : <normal, x> <= offset }`.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace<R> {
    pub normal: Vec<R>,
    pub offset: R,
}

impl<R: Real> Halfspace<R> {
    pub fn new(normal: Vec<R>, offset: R) -> Self {
        Halfspace { normal, offset }
    }

    /// Signed slack `offset - <normal, x>`; nonnegative inside.
    pub fn slack(&self, x: &[R]) -> R {
        self.offset - dot(&self.normal, x)
    }
}

fn solve2<R: Real>(a: &Halfspace<R>, b: &Halfspace<R>) -> Option<Vec<R>> {
    let det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
    let na = dot(&a.normal, &a.normal).sqrt();
    let nb = dot(&b.normal, &b.normal).sqrt();
    if det.abs() <= real::<R>(1e-12) * na * nb {
        return None;
    }
    let x = (a.offset * b.normal[1] - b.offset * a.normal[1]) / det;
    let y = (a.normal[0] * b.offset - b.normal[0] * a.offset) / det;
    Some(vec![x, y])
}

fn solve3<R: Real>(a: &Halfspace<R>, b: &Halfspace<R>, c: &Halfspace<R>) -> Option<Vec<R>> {
    let m = [&a.normal, &b.normal, &c.normal];
    let rhs = [a.offset, b.offset, c.offset];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let scale = m
        .iter()
        .map(|n| dot(n, n).sqrt())
        .fold(R::one(), |acc, v| acc * v);
    if det.abs() <= real::<R>(1e-10) * scale {
        return None;
    }
    let mut x = vec![R::zero(); 3];
    for (col, xi) in x.iter_mut().enumerate() {
        // Cramer: replace column `col` with the right-hand side.
        let col_of = |row: usize, j: usize| if j == col { rhs[row] } else { m[row][j] };
        let d = col_of(0, 0) * (col_of(1, 1) * col_of(2, 2) - col_of(1, 2) * col_of(2, 1))
            - col_of(0, 1) * (col_of(1, 0) * col_of(2, 2) - col_of(1, 2) * col_of(2, 0))
            + col_of(0, 2) * (col_of(1, 0) * col_of(2, 1) - col_of(1, 1) * col_of(2, 0));
        *xi = d / det;
    }
    Some(x)
}

/// All vertices of the (assumed bounded) region cut out by `halfspaces`.
///
/// Candidate points come from every constraint pair (2-D) or triple (3-D);
/// a candidate survives if it satisfies every constraint up to a relative
/// feasibility slack. Returns an empty list when the region is empty or has
/// no corner, and does not detect unboundedness: callers must pass systems
/// they know are bounded (intersections of bounded bodies, clipped cells).
pub fn feasible_vertices<R: Real>(halfspaces: &[Halfspace<R>], dim: usize) -> Vec<Vec<R>> {
    let mut off_scale = R::one();
    for h in halfspaces {
        off_scale = off_scale.max(h.offset.abs());
    }
    let feas = real::<R>(1e-9) * off_scale;
    let feasible = |x: &[R]| halfspaces.iter().all(|h| h.slack(x) >= -feas);

    let mut verts: Vec<Vec<R>> = Vec::new();
    match dim {
        1 => {
            // Tightest upper and lower bounds, if both sides are present.
            let mut lo: Option<R> = None;
            let mut hi: Option<R> = None;
            for h in halfspaces {
                let n = h.normal[0];
                if n.abs() <= real::<R>(1e-30) {
                    continue;
                }
                let bound = h.offset / n;
                if n > R::zero() {
                    hi = Some(hi.map_or(bound, |v: R| v.min(bound)));
                } else {
                    lo = Some(lo.map_or(bound, |v: R| v.max(bound)));
                }
            }
            if let (Some(lo), Some(hi)) = (lo, hi) {
                if lo <= hi + feas {
                    verts.push(vec![lo]);
                    verts.push(vec![hi]);
                }
            }
        }
        2 => {
            for i in 0..halfspaces.len() {
                for j in (i + 1)..halfspaces.len() {
                    if let Some(x) = solve2(&halfspaces[i], &halfspaces[j]) {
                        if feasible(&x) {
                            verts.push(x);
                        }
                    }
                }
            }
        }
        3 => {
            for i in 0..halfspaces.len() {
                for j in (i + 1)..halfspaces.len() {
                    for k in (j + 1)..halfspaces.len() {
                        if let Some(x) =
                            solve3(&halfspaces[i], &halfspaces[j], &halfspaces[k])
                        {
                            if feasible(&x) {
                                verts.push(x);
                            }
                        }
                    }
                }
            }
        }
        _ => {}
    }
    verts
}

/// Volume of `box ∩ halfspaces` where the box is `[lo_i, hi_i]` per axis.
///
/// Exact up to hull arithmetic. Degenerate (lower-dimensional or empty)
/// intersections have volume zero.
pub fn clipped_box_volume<R: Real>(
    lo: &[R],
    hi: &[R],
    halfspaces: &[Halfspace<R>],
) -> Result<R> {
    let dim = lo.len();
    if dim == 0 || dim > 3 || hi.len() != dim {
        return Err(Error::UnsupportedDimension(dim));
    }
    let mut system: Vec<Halfspace<R>> = Vec::with_capacity(2 * dim + halfspaces.len());
    for axis in 0..dim {
        let mut up = vec![R::zero(); dim];
        up[axis] = R::one();
        system.push(Halfspace::new(up.clone(), hi[axis]));
        let mut down = up;
        down[axis] = -R::one();
        system.push(Halfspace::new(down, -lo[axis]));
    }
    system.extend_from_slice(halfspaces);
    let verts = feasible_vertices(&system, dim);
    Ok(vertex_set_volume(&verts, dim))
}

/// Volume of the hull of a vertex set; zero when degenerate.
pub fn vertex_set_volume<R: Real>(verts: &[Vec<R>], dim: usize) -> R {
    if verts.is_empty() {
        return R::zero();
    }
    match dim {
        1 => match hull_1d(verts) {
            Ok(h) if h.len() == 2 => h[1][0] - h[0][0],
            _ => R::zero(),
        },
        2 => match hull_2d(verts) {
            Ok(h) => polygon_area(&h),
            Err(_) => R::zero(),
        },
        3 => match hull_3d(verts) {
            Ok(h) => hull3_volume(&h),
            Err(_) => R::zero(),
        },
        _ => R::zero(),
    }
}
