//! Convex polytopes in dimension 1..=3 with exact vertex arithmetic.
//!
//! A `Polytope` stores the extreme points of a full-dimensional convex body
//! in a canonical order (1-D: increasing; 2-D: counterclockwise from the
//! lexicographically smallest vertex; 3-D: lexicographic). Canonical storage
//! makes equality checks and text round-trips deterministic.

pub mod clip;
pub mod hull;

use crate::scalar::{real, Real};
use crate::{Error, Result};
use clip::{feasible_vertices, Halfspace};
use hull::{dot, hull_1d, hull_2d, hull_3d, hull3_volume, lex_cmp, polygon_area, sub};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct Polytope<R> {
    dim: usize,
    verts: Vec<Vec<R>>,
}

impl<R: Real> Polytope<R> {
    /// Hull of a point set; the points must span the full ambient dimension.
    pub fn from_points(dim: usize, points: &[Vec<R>]) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch);
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::NanValue);
            }
        }
        let verts = match dim {
            1 => {
                let h = hull_1d(points)?;
                if h.len() < 2 {
                    return Err(Error::DegenerateBody);
                }
                h
            }
            2 => hull_2d(points)?,
            _ => hull_3d(points)?.vertices,
        };
        Ok(Polytope { dim, verts })
    }

    /// The simplex with vertices at the origin and the standard basis.
    pub fn standard_simplex(dim: usize) -> Result<Self> {
        let mut pts = vec![vec![R::zero(); dim]];
        for i in 0..dim {
            let mut e = vec![R::zero(); dim];
            e[i] = R::one();
            pts.push(e);
        }
        Self::from_points(dim, &pts)
    }

    /// The cube `[-half, half]^dim`.
    pub fn centered_cube(dim: usize, half: R) -> Result<Self> {
        let mut pts = Vec::with_capacity(1 << dim);
        for mask in 0..(1u32 << dim) {
            let p: Vec<R> = (0..dim)
                .map(|i| if mask >> i & 1 == 1 { half } else { -half })
                .collect();
            pts.push(p);
        }
        Self::from_points(dim, &pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<R>] {
        &self.verts
    }

    pub fn volume(&self) -> R {
        match self.dim {
            1 => self.verts[1][0] - self.verts[0][0],
            2 => polygon_area(&self.verts),
            _ => match hull_3d(&self.verts) {
                Ok(h) => hull3_volume(&h),
                Err(_) => R::zero(),
            },
        }
    }

    /// Support function `max_v <dir, v>`.
    pub fn support(&self, dir: &[R]) -> R {
        self.verts
            .iter()
            .map(|v| dot(dir, v))
            .fold(R::neg_infinity(), R::max)
    }

    /// Mean of the vertices; interior for a full-dimensional body.
    pub fn vertex_centroid(&self) -> Vec<R> {
        let n = real::<R>(self.verts.len() as f64);
        (0..self.dim)
            .map(|k| {
                self.verts
                    .iter()
                    .fold(R::zero(), |acc, v| acc + v[k])
                    / n
            })
            .collect()
    }

    /// Facet halfspaces with unit outward normals, deduplicated.
    pub fn facets(&self) -> Vec<Halfspace<R>> {
        let mut out: Vec<Halfspace<R>> = Vec::new();
        match self.dim {
            1 => {
                out.push(Halfspace::new(vec![R::one()], self.verts[1][0]));
                out.push(Halfspace::new(vec![-R::one()], -self.verts[0][0]));
            }
            2 => {
                let n = self.verts.len();
                for i in 0..n {
                    let a = &self.verts[i];
                    let b = &self.verts[(i + 1) % n];
                    let d = sub(b, a);
                    let len = dot(&d, &d).sqrt();
                    let normal = vec![d[1] / len, -d[0] / len];
                    let offset = dot(&normal, a);
                    out.push(Halfspace::new(normal, offset));
                }
            }
            _ => {
                let h = hull_3d(&self.verts).expect("stored vertices are full-dimensional");
                for f in &h.faces {
                    let a = &h.vertices[f[0]];
                    let u = sub(&h.vertices[f[1]], a);
                    let v = sub(&h.vertices[f[2]], a);
                    let n = hull::cross3(&u, &v);
                    let len = dot(&n, &n).sqrt();
                    if len <= R::zero() {
                        continue;
                    }
                    let normal: Vec<R> = n.iter().map(|&c| c / len).collect();
                    let offset = dot(&normal, a);
                    let tol = real::<R>(1e-9) * (R::one() + offset.abs());
                    let dup = out.iter().any(|g| {
                        (g.offset - offset).abs() <= tol
                            && g.normal
                                .iter()
                                .zip(normal.iter())
                                .all(|(&x, &y)| (x - y).abs() <= real::<R>(1e-9))
                    });
                    if !dup {
                        out.push(Halfspace::new(normal, offset));
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, x: &[R], tol: R) -> bool {
        self.facets().iter().all(|h| h.slack(x) >= -tol)
    }

    pub fn translate(&self, shift: &[R]) -> Self {
        let verts = self
            .verts
            .iter()
            .map(|v| v.iter().zip(shift.iter()).map(|(&a, &s)| a + s).collect())
            .collect();
        // Translation preserves extremality and, in 1-D/3-D, canonical order;
        // a 2-D chain keeps orientation but may start elsewhere, so re-rotate.
        let mut p = Polytope {
            dim: self.dim,
            verts,
        };
        if self.dim == 2 {
            p.rotate_2d_canonical();
        }
        p
    }

    /// Point reflection through `center`: `{ 2 center - v }`.
    pub fn reflect_through(&self, center: &[R]) -> Self {
        let two = real::<R>(2.0);
        let pts: Vec<Vec<R>> = self
            .verts
            .iter()
            .map(|v| {
                v.iter()
                    .zip(center.iter())
                    .map(|(&a, &c)| two * c - a)
                    .collect()
            })
            .collect();
        Self::from_points(self.dim, &pts).expect("reflection preserves full dimension")
    }

    fn rotate_2d_canonical(&mut self) {
        let start = self
            .verts
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| lex_cmp(a, b))
            .map(|(i, _)| i)
            .unwrap();
        self.verts.rotate_left(start);
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch);
        }
        let mut sums: Vec<Vec<R>> = Vec::with_capacity(self.verts.len() * other.verts.len());
        for a in &self.verts {
            for b in &other.verts {
                sums.push(a.iter().zip(b.iter()).map(|(&x, &y)| x + y).collect());
            }
        }
        Self::from_points(self.dim, &sums)
    }

    /// The difference body `K + (-K)`.
    pub fn difference_body(&self) -> Result<Self> {
        let origin = vec![R::zero(); self.dim];
        self.minkowski_sum(&self.reflect_through(&origin))
    }

    /// Hull of `K` together with its reflection through `x`: `conv(K ∪ (2x - K))`.
    pub fn hull_with_reflection(&self, x: &[R]) -> Result<Self> {
        let two = real::<R>(2.0);
        let mut pts = self.verts.clone();
        for v in &self.verts {
            pts.push(
                v.iter()
                    .zip(x.iter())
                    .map(|(&a, &c)| two * c - a)
                    .collect(),
            );
        }
        Self::from_points(self.dim, &pts)
    }

    /// Polar body `{ y : <y, x> <= 1 for all x in K }`; requires the origin
    /// strictly inside.
    pub fn polar(&self) -> Result<Self> {
        let facets = self.facets();
        let mut margin = R::infinity();
        for h in &facets {
            margin = margin.min(h.offset);
        }
        let tol = real::<R>(1e-10) * (R::one() + self.coordinate_scale());
        if margin <= tol {
            return Err(Error::OriginNotInterior);
        }
        let pts: Vec<Vec<R>> = facets
            .iter()
            .map(|h| h.normal.iter().map(|&c| c / h.offset).collect())
            .collect();
        Self::from_points(self.dim, &pts)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch);
        }
        let mut system = self.facets();
        system.extend(other.facets());
        let verts = feasible_vertices(&system, self.dim);
        if verts.is_empty() {
            return Err(Error::EmptyIntersection);
        }
        Self::from_points(self.dim, &verts).map_err(|e| match e {
            Error::DegenerateBody => Error::EmptyIntersection,
            other => other,
        })
    }

    fn coordinate_scale(&self) -> R {
        let mut s = R::zero();
        for v in &self.verts {
            for &c in v {
                s = s.max(c.abs());
            }
        }
        s
    }

    /// One vertex per line, coordinates separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.verts {
            let coords: Vec<String> = v.iter().map(|c| format!("{}", c)).collect();
            s.push_str(&coords.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the `to_text` format; blank lines and `#` comments are skipped,
    /// and the result is re-hulled so any point list is accepted.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut pts: Vec<Vec<R>> = Vec::new();
        let mut dim = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let coords: std::result::Result<Vec<f64>, _> =
                line.split_whitespace().map(str::parse::<f64>).collect();
            let coords =
                coords.map_err(|e| Error::Parse(format!("bad vertex line {line:?}: {e}")))?;
            match dim {
                None => dim = Some(coords.len()),
                Some(d) if d != coords.len() => {
                    return Err(Error::Parse(format!(
                        "vertex line {line:?} has {} coordinates, expected {d}",
                        coords.len()
                    )))
                }
                _ => {}
            }
            pts.push(coords.into_iter().map(real::<R>).collect());
        }
        let dim = dim.ok_or_else(|| Error::Parse("no vertices in input".into()))?;
        Self::from_points(dim, &pts)
    }
}

impl<R: Real> fmt::Display for Polytope<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Whether the polar of `K ∩ (-K)` equals `conv(K* ∪ -K*)`, comparing vertex
/// sets pairwise within `tol`. Both sides need the origin interior to `K`.
pub fn hull_duality_check<R: Real>(body: &Polytope<R>, tol: R) -> Result<bool> {
    let origin = vec![R::zero(); body.dim()];
    let reflected = body.reflect_through(&origin);
    let lhs = body.intersect(&reflected)?.polar()?;

    let polar = body.polar()?;
    let polar_reflected = polar.reflect_through(&origin);
    let mut pts = polar.vertices().to_vec();
    pts.extend_from_slice(polar_reflected.vertices());
    let rhs = Polytope::from_points(body.dim(), &pts)?;

    Ok(vertex_sets_match(lhs.vertices(), rhs.vertices(), tol))
}

fn vertex_sets_match<R: Real>(a: &[Vec<R>], b: &[Vec<R>], tol: R) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for va in a {
        for (j, vb) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            if va.iter().zip(vb.iter()).all(|(&x, &y)| (x - y).abs() <= tol) {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}
