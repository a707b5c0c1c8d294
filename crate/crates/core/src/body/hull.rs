//! Convex hull kernels for point sets in dimension 1..=3.
//!
//! All algorithms are deterministic: ties are broken lexicographically and
//! insertion orders are fixed, so identical inputs give identical outputs
//! bit for bit.

use crate::scalar::{real, Real};
use crate::{Error, Result};
use std::cmp::Ordering;

/// Lexicographic comparison of coordinate vectors (total: NaN is rejected at
/// polytope construction).
pub fn lex_cmp<R: Real>(a: &[R], b: &[R]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.partial_cmp(y).expect("coordinates are never NaN") {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn coordinate_scale<R: Real>(points: &[Vec<R>]) -> R {
    let mut s = R::one();
    for p in points {
        for &c in p {
            s = s.max(c.abs());
        }
    }
    s
}

/// Sorts lexicographically and removes near-duplicates.
fn sorted_dedup<R: Real>(points: &[Vec<R>], tol: R) -> Vec<Vec<R>> {
    // Merging only lex-adjacent points misses near-duplicates that an
    // ulp-smaller coordinate sorts past an unrelated point, so points are
    // keyed by tolerance-quantized coordinates instead. Original coordinates
    // are kept (lex-smallest per key), keeping output independent of input
    // order and unperturbed.
    let quant = |p: &Vec<R>| -> Vec<R> {
        if tol > R::zero() {
            p.iter().map(|&c| (c / tol).round() * tol).collect()
        } else {
            p.clone()
        }
    };
    let mut keyed: Vec<(Vec<R>, Vec<R>)> =
        points.iter().map(|p| (quant(p), p.clone())).collect();
    keyed.sort_by(|a, b| lex_cmp(&a.0, &b.0).then_with(|| lex_cmp(&a.1, &b.1)));
    let mut out: Vec<Vec<R>> = Vec::with_capacity(keyed.len());
    let mut last_key: Option<Vec<R>> = None;
    for (key, p) in keyed {
        if last_key.as_ref() != Some(&key) {
            out.push(p);
            last_key = Some(key);
        }
    }
    out
}

/// Hull of a 1-D point set: its two extreme points (or one, if all coincide).
pub fn hull_1d<R: Real>(points: &[Vec<R>]) -> Result<Vec<Vec<R>>> {
    if points.is_empty() {
        return Err(Error::DegenerateBody);
    }
    let mut lo = points[0][0];
    let mut hi = points[0][0];
    for p in points {
        lo = lo.min(p[0]);
        hi = hi.max(p[0]);
    }
    if lo == hi {
        return Ok(vec![vec![lo]]);
    }
    Ok(vec![vec![lo], vec![hi]])
}

#[inline]
fn cross2<R: Real>(o: &[R], a: &[R], b: &[R]) -> R {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Monotone-chain hull of a 2-D point set, counterclockwise, starting at the
/// lexicographically smallest vertex. Nearly collinear triples (relative to
/// the coordinate scale) are flattened so no spurious vertices survive.
pub fn hull_2d<R: Real>(points: &[Vec<R>]) -> Result<Vec<Vec<R>>> {
    let scale = coordinate_scale(points);
    let dedup_tol = real::<R>(1e-12) * scale;
    let pts = sorted_dedup(points, dedup_tol);
    if pts.len() < 3 {
        return Err(Error::DegenerateBody);
    }
    let area_tol = real::<R>(1e-12) * scale * scale;

    fn chain<R: Real>(iter: impl Iterator<Item = Vec<R>>, area_tol: R) -> Vec<Vec<R>> {
        let mut out: Vec<Vec<R>> = Vec::new();
        for p in iter {
            while out.len() >= 2
                && cross2(&out[out.len() - 2], &out[out.len() - 1], &p) <= area_tol
            {
                out.pop();
            }
            out.push(p);
        }
        out
    }
    let lower = chain(pts.iter().cloned(), area_tol);
    let upper = chain(pts.iter().rev().cloned(), area_tol);
    let mut hull = lower;
    hull.pop();
    let n_up = upper.len();
    hull.extend(upper.into_iter().take(n_up.saturating_sub(1)));
    if hull.len() < 3 {
        return Err(Error::DegenerateBody);
    }
    Ok(hull)
}

/// Oriented triangular faces of the hull of a 3-D point set, plus the indices
/// (into `points`) of the hull vertices in lexicographic order.
///
/// Incremental construction: a non-degenerate starting tetrahedron, then each
/// remaining point (in a fixed order) replaces its visible faces through the
/// horizon. Points within `1e-9 * scale` of a supporting plane count as not
/// visible, so face-coplanar points never become vertices.
pub fn hull_3d<R: Real>(points: &[Vec<R>]) -> Result<Hull3<R>> {
    let scale = coordinate_scale(points);
    let pts = sorted_dedup(points, real::<R>(1e-12) * scale);
    if pts.len() < 4 {
        return Err(Error::DegenerateBody);
    }
    let eps = real::<R>(1e-9) * scale;

    // Starting simplex: spread apart in a deterministic greedy way.
    let i0 = 0usize;
    let mut i1 = 1;
    let mut best = R::zero();
    for (i, p) in pts.iter().enumerate().skip(1) {
        let d = dist2(&pts[i0], p);
        if d > best {
            best = d;
            i1 = i;
        }
    }
    if best.sqrt() <= eps {
        return Err(Error::DegenerateBody);
    }
    let mut i2 = usize::MAX;
    let mut best = R::zero();
    for (i, p) in pts.iter().enumerate() {
        if i == i0 || i == i1 {
            continue;
        }
        let a = cross3(&sub(&pts[i1], &pts[i0]), &sub(p, &pts[i0]));
        let d = dot(&a, &a);
        if d > best {
            best = d;
            i2 = i;
        }
    }
    if i2 == usize::MAX || best.sqrt() <= eps * eps {
        return Err(Error::DegenerateBody);
    }
    let normal = cross3(&sub(&pts[i1], &pts[i0]), &sub(&pts[i2], &pts[i0]));
    let mut i3 = usize::MAX;
    let mut best = R::zero();
    for (i, p) in pts.iter().enumerate() {
        if i == i0 || i == i1 || i == i2 {
            continue;
        }
        let d = dot(&normal, &sub(p, &pts[i0])).abs();
        if d > best {
            best = d;
            i3 = i;
        }
    }
    let norm_len = dot(&normal, &normal).sqrt();
    if i3 == usize::MAX || best <= eps * norm_len {
        return Err(Error::DegenerateBody);
    }

    let mut faces: Vec<Face<R>> = Vec::new();
    let quad = [i0, i1, i2, i3];
    let centroid: Vec<R> = (0..3)
        .map(|k| {
            quad.iter().fold(R::zero(), |acc, &i| acc + pts[i][k]) / real::<R>(4.0)
        })
        .collect();
    for omit in 0..4 {
        let mut tri: Vec<usize> = (0..4).filter(|&j| j != omit).map(|j| quad[j]).collect();
        let mut n = tri_normal(&pts, tri[0], tri[1], tri[2]);
        // Outward: centroid on the negative side.
        if dot(&n, &sub(&centroid, &pts[tri[0]])) > R::zero() {
            tri.swap(1, 2);
            n = tri_normal(&pts, tri[0], tri[1], tri[2]);
        }
        let nlen = dot(&n, &n).sqrt();
        faces.push(Face {
            v: [tri[0], tri[1], tri[2]],
            normal: n,
            nlen,
            alive: true,
        });
    }

    for (idx, p) in pts.iter().enumerate() {
        if quad.contains(&idx) {
            continue;
        }
        // Visible faces. The signed offset is accumulated coordinatewise so
        // interior points (the common case on grids) cost no allocation.
        let mut visible: Vec<usize> = Vec::new();
        for (fi, f) in faces.iter().enumerate() {
            let q = &pts[f.v[0]];
            let mut d = R::zero();
            for k in 0..3 {
                d = d + f.normal[k] * (p[k] - q[k]);
            }
            if d > eps * f.nlen {
                visible.push(fi);
            }
        }
        if visible.is_empty() {
            continue;
        }
        // Horizon: directed edges of visible faces whose reverse edge is not
        // on a visible face.
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &fi in &visible {
            let [a, b, c] = faces[fi].v;
            edges.push((a, b));
            edges.push((b, c));
            edges.push((c, a));
        }
        let horizon: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(a, b)| !edges.contains(&(*b, *a)))
            .cloned()
            .collect();
        for &fi in &visible {
            faces[fi].alive = false;
        }
        for (a, b) in horizon {
            let n = tri_normal(&pts, a, b, idx);
            let nlen = dot(&n, &n).sqrt();
            faces.push(Face {
                v: [a, b, idx],
                normal: n,
                nlen,
                alive: true,
            });
        }
        // Dropping dead faces keeps the scan linear in the live face count.
        faces.retain(|f| f.alive);
    }

    let live: Vec<&Face<R>> = faces.iter().filter(|f| f.alive).collect();
    let mut vertex_ids: Vec<usize> = live.iter().flat_map(|f| f.v).collect();
    vertex_ids.sort_unstable();
    vertex_ids.dedup();
    let mut vertices: Vec<Vec<R>> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..vertices.len()).collect();
        idx.sort_by(|&a, &b| lex_cmp(&vertices[a], &vertices[b]));
        idx
    };
    let mut rank = vec![0usize; vertices.len()];
    for (new_pos, &old_pos) in order.iter().enumerate() {
        rank[old_pos] = new_pos;
    }
    vertices = order.iter().map(|&i| vertices[i].clone()).collect();
    let remap: std::collections::HashMap<usize, usize> = vertex_ids
        .iter()
        .enumerate()
        .map(|(compact, &orig)| (orig, rank[compact]))
        .collect();
    let tris: Vec<[usize; 3]> = live
        .iter()
        .map(|f| [remap[&f.v[0]], remap[&f.v[1]], remap[&f.v[2]]])
        .collect();
    Ok(Hull3 {
        vertices,
        faces: tris,
    })
}

/// A 3-D hull: vertices in lexicographic order and outward-oriented
/// triangular faces indexing into them.
pub struct Hull3<R> {
    pub vertices: Vec<Vec<R>>,
    pub faces: Vec<[usize; 3]>,
}

struct Face<R> {
    v: [usize; 3],
    normal: Vec<R>,
    // Cached |normal| so visibility tests skip the per-point sqrt.
    nlen: R,
    alive: bool,
}

pub fn sub<R: Real>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b.iter()).map(|(&x, &y)| x - y).collect()
}

pub fn dot<R: Real>(a: &[R], b: &[R]) -> R {
    a.iter()
        .zip(b.iter())
        .fold(R::zero(), |acc, (&x, &y)| acc + x * y)
}

pub fn cross3<R: Real>(a: &[R], b: &[R]) -> Vec<R> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dist2<R: Real>(a: &[R], b: &[R]) -> R {
    let d = sub(a, b);
    dot(&d, &d)
}

fn tri_normal<R: Real>(pts: &[Vec<R>], a: usize, b: usize, c: usize) -> Vec<R> {
    cross3(&sub(&pts[b], &pts[a]), &sub(&pts[c], &pts[a]))
}

/// Shoelace area of a counterclockwise polygon.
pub fn polygon_area<R: Real>(verts: &[Vec<R>]) -> R {
    let n = verts.len();
    let mut twice = R::zero();
    for i in 0..n {
        let a = &verts[i];
        let b = &verts[(i + 1) % n];
        twice = twice + a[0] * b[1] - b[0] * a[1];
    }
    twice.abs() / real::<R>(2.0)
}

/// Volume of a 3-D hull from its outward-oriented faces.
pub fn hull3_volume<R: Real>(hull: &Hull3<R>) -> R {
    let o = &hull.vertices[0];
    let mut six = R::zero();
    for f in &hull.faces {
        let a = sub(&hull.vertices[f[0]], o);
        let b = sub(&hull.vertices[f[1]], o);
        let c = sub(&hull.vertices[f[2]], o);
        six = six + dot(&cross3(&a, &b), &c);
    }
    six.abs() / real::<R>(6.0)
}
