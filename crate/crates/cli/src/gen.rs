//! Seeded random instances: log-concave grid functions, power-concave
//! functions on polytope supports, and random polytopes.
//!
//! Every generator draws from a caller-owned [`SplitMix64`], so a suite's
//! case list is a pure function of its seed.

use diffn_core::body::Polytope;
use diffn_core::family::support_coverage;
use diffn_core::grid::{BoxDomain, GridFunction};
use diffn_core::ExtNonNeg;

use crate::rng::SplitMix64;

/// Convex potential `max_j (a_j . x + b_j) + sum_i c_i (x_i - m_i)^2` with
/// one to four affine pieces and a strictly positive diagonal quadratic, so
/// `exp(-v)` is log-concave with Gaussian-or-faster tails.
pub struct ConvexPotential {
    affine: Vec<(Vec<f64>, f64)>,
    quad: Vec<(f64, f64)>,
}

impl ConvexPotential {
    pub fn random(rng: &mut SplitMix64, dim: usize) -> Self {
        let pieces = 1 + rng.below(4);
        let affine = (0..pieces)
            .map(|_| {
                let slope: Vec<f64> = (0..dim).map(|_| rng.range(-1.0, 1.0)).collect();
                (slope, rng.range(-0.3, 0.3))
            })
            .collect();
        let quad = (0..dim)
            .map(|_| (rng.range(0.08, 0.35), rng.range(-1.0, 1.0)))
            .collect();
        Self { affine, quad }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let planes = self
            .affine
            .iter()
            .map(|(a, b)| a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>() + b)
            .fold(f64::NEG_INFINITY, f64::max);
        let quad: f64 = self
            .quad
            .iter()
            .zip(x)
            .map(|((c, m), xi)| c * (xi - m) * (xi - m))
            .sum();
        planes + quad
    }
}

pub fn random_log_concave(
    rng: &mut SplitMix64,
    dim: usize,
    halfwidth: f64,
    count: usize,
) -> GridFunction<f64> {
    let v = ConvexPotential::random(rng, dim);
    let domain = BoxDomain::centered(dim, halfwidth, count).unwrap();
    let logs = domain.iter_nodes().map(|(_, x)| v.eval(&x)).collect();
    GridFunction::from_logs(domain, logs).unwrap()
}

/// Even log-concave instance (the potential symmetrized through the
/// origin); these sit at the lower end of the difference inequality.
pub fn random_even_log_concave(
    rng: &mut SplitMix64,
    dim: usize,
    halfwidth: f64,
    count: usize,
) -> GridFunction<f64> {
    let v = ConvexPotential::random(rng, dim);
    let domain = BoxDomain::centered(dim, halfwidth, count).unwrap();
    let logs = domain
        .iter_nodes()
        .map(|(_, x)| {
            let neg: Vec<f64> = x.iter().map(|c| -c).collect();
            0.5 * (v.eval(&x) + v.eval(&neg))
        })
        .collect();
    GridFunction::from_logs(domain, logs).unwrap()
}

pub fn random_polygon(rng: &mut SplitMix64, sides: usize, radius: f64) -> Polytope<f64> {
    for _ in 0..100 {
        let pts: Vec<Vec<f64>> = (0..sides)
            .map(|i| {
                let t = (i as f64 + 0.2 + 0.6 * rng.uniform()) / sides as f64
                    * std::f64::consts::TAU;
                let r = radius * (0.35 + 0.65 * rng.uniform());
                vec![r * t.cos(), r * t.sin()]
            })
            .collect();
        if let Ok(p) = Polytope::from_points(2, &pts) {
            return p;
        }
    }
    unreachable!("jittered circle points keep positive area");
}

pub fn random_polytope3(rng: &mut SplitMix64, points: usize, radius: f64) -> Polytope<f64> {
    for _ in 0..100 {
        let pts: Vec<Vec<f64>> = (0..points)
            .map(|_| loop {
                let p: Vec<f64> = (0..3).map(|_| rng.range(-1.0, 1.0)).collect();
                let n = p.iter().map(|c| c * c).sum::<f64>().sqrt();
                if n > 0.2 && n <= 1.0 {
                    let r = radius * (0.5 + 0.5 * rng.uniform());
                    break p.into_iter().map(|c| c * r / n).collect();
                }
            })
            .collect();
        if let Ok(p) = Polytope::from_points(3, &pts) {
            if p.vertices().len() >= 4 {
                return p;
            }
        }
    }
    unreachable!("spread sphere points span a full-dimensional hull");
}

/// A point of the body, drawn as a random convex combination of vertices.
pub fn random_point_in(rng: &mut SplitMix64, body: &Polytope<f64>) -> Vec<f64> {
    let verts = body.vertices();
    let weights: Vec<f64> = (0..verts.len())
        .map(|_| -(1.0 - rng.uniform()).ln() + 1e-12)
        .collect();
    let total: f64 = weights.iter().sum();
    let mut x = vec![0.0; body.dim()];
    for (w, v) in weights.iter().zip(verts) {
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += w / total * vi;
        }
    }
    x
}

/// A grid instance with a known polytope support.
pub struct SupportedInstance {
    pub f: GridFunction<f64>,
    pub support: Polytope<f64>,
}

fn support_body(rng: &mut SplitMix64, dim: usize) -> Polytope<f64> {
    match dim {
        1 => {
            let a = rng.range(1.5, 3.0);
            let b = rng.range(1.5, 3.0);
            Polytope::from_points(1, &[vec![-a], vec![b]]).unwrap()
        }
        2 => {
            let sides = 5 + rng.below(4);
            let radius = rng.range(2.0, 3.0);
            random_polygon(rng, sides, radius)
        }
        _ => {
            let radius = rng.range(1.5, 2.5);
            random_polytope3(rng, 10, radius)
        }
    }
}

pub(crate) fn padded_bbox(body: &Polytope<f64>, count: usize) -> BoxDomain<f64> {
    let dim = body.dim();
    let bounds: Vec<(f64, f64, usize)> = (0..dim)
        .map(|k| {
            let lo = body.vertices().iter().map(|v| v[k]).fold(f64::INFINITY, f64::min);
            let hi = body
                .vertices()
                .iter()
                .map(|v| v[k])
                .fold(f64::NEG_INFINITY, f64::max);
            let pad = 0.06 * (hi - lo);
            (lo - pad, hi + pad, count)
        })
        .collect();
    BoxDomain::from_bounds(&bounds).unwrap()
}

fn on_support(
    rng: &mut SplitMix64,
    dim: usize,
    count: usize,
    profile: impl Fn(f64) -> f64,
) -> SupportedInstance {
    let support = support_body(rng, dim);
    let u = ConvexPotential::random(rng, dim);
    let domain = padded_bbox(&support, count);
    let facets = support.facets();
    let values: Vec<ExtNonNeg<f64>> = domain
        .iter_nodes()
        .map(|(_, x)| {
            if support.contains(&x, 1e-12) {
                // Keep the potential at least 1 so the profile stays bounded.
                ExtNonNeg::new(profile(1.0 + u.eval(&x).max(0.0))).unwrap()
            } else {
                ExtNonNeg::zero()
            }
        })
        .collect();
    let f = GridFunction::from_values(domain.clone(), values)
        .unwrap()
        .with_cover(support_coverage(&domain, &facets))
        .unwrap();
    SupportedInstance { f, support }
}

/// `u^(1/alpha)` on a random polytope support, zero outside: the potential
/// `u` is convex, so the result is alpha-concave for the given negative
/// exponent, with an integrable jump handled by exact coverage fractions.
pub fn random_alpha_concave(
    rng: &mut SplitMix64,
    dim: usize,
    alpha: f64,
    count: usize,
) -> SupportedInstance {
    on_support(rng, dim, count, |u| u.powf(1.0 / alpha))
}

/// `1/u` on a random polytope support: quasi-concave (every superlevel set
/// is convex) but not alpha-concave for any finite exponent in general.
pub fn random_quasi_concave(rng: &mut SplitMix64, dim: usize, count: usize) -> SupportedInstance {
    on_support(rng, dim, count, |u| 1.0 / u)
}
