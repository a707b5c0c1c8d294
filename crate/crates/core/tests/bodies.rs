//! Cross-checks of the polytope layer: sharp difference-body ratios,
//! reflection hulls, polarity round trips and support arithmetic.

use diffn_core::body::clip::Halfspace;
use diffn_core::{hull_duality_check, Polytope};

fn fixed_polygons() -> Vec<Polytope<f64>> {
    // A deterministic spread: simplex-like, symmetric, lopsided, many-sided.
    let vertex_sets: Vec<Vec<Vec<f64>>> = vec![
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
        vec![vec![-1.0, -0.5], vec![1.0, -0.5], vec![1.0, 0.5], vec![-1.0, 0.5]],
        vec![vec![-0.8, 0.1], vec![0.9, -0.4], vec![1.1, 0.7], vec![0.2, 1.3]],
        vec![
            vec![1.0, 0.0],
            vec![0.62, 0.78],
            vec![-0.22, 0.97],
            vec![-0.9, 0.43],
            vec![-0.9, -0.43],
            vec![-0.22, -0.97],
            vec![0.62, -0.78],
        ],
        vec![vec![0.05, 0.0], vec![2.4, 0.3], vec![0.3, 0.35]],
    ];
    vertex_sets
        .into_iter()
        .map(|vs| Polytope::from_points(2, &vs).unwrap())
        .collect()
}

#[test]
fn difference_body_ratios_hit_the_simplex_extremes() {
    let tri: Polytope<f64> = Polytope::standard_simplex(2).unwrap();
    let r2 = tri.difference_body().unwrap().volume() / tri.volume();
    assert!((r2 - 6.0).abs() < 1e-12, "{r2}");

    let tet: Polytope<f64> = Polytope::standard_simplex(3).unwrap();
    let r3 = tet.difference_body().unwrap().volume() / tet.volume();
    assert!((r3 - 20.0).abs() < 1e-9, "{r3}");
}

#[test]
fn difference_body_ratios_stay_between_four_and_six() {
    for body in fixed_polygons() {
        let r = body.difference_body().unwrap().volume() / body.volume();
        assert!((4.0 - 1e-9..=6.0 + 1e-9).contains(&r), "{r}");
    }
    // Central symmetry pins the lower end exactly.
    let slab: Polytope<f64> = Polytope::from_points(
        2,
        &[vec![-1.0, -0.25], vec![1.0, -0.75], vec![1.0, 0.25], vec![-1.0, 0.75]],
    )
    .unwrap();
    let r = slab.difference_body().unwrap().volume() / slab.volume();
    assert!((r - 4.0).abs() < 1e-12, "{r}");
}

#[test]
fn reflection_hull_ratio_caps_at_two_to_the_n() {
    let tri: Polytope<f64> = Polytope::standard_simplex(2).unwrap();
    for v in tri.vertices().to_vec() {
        let hull = tri.hull_with_reflection(&v).unwrap();
        let r = hull.volume() / tri.volume();
        assert!((r - 4.0).abs() < 1e-12, "vertex {v:?}: {r}");
    }
    for body in fixed_polygons() {
        for x in body.vertices().iter().chain(std::iter::once(&body.vertex_centroid())) {
            let r = body.hull_with_reflection(x).unwrap().volume() / body.volume();
            assert!(r <= 4.0 + 1e-9, "{r}");
            assert!(r >= 1.0 - 1e-12, "{r}");
        }
    }
}

#[test]
fn polar_round_trips_restore_the_body() {
    let cube2: Polytope<f64> = Polytope::centered_cube(2, 1.0).unwrap();
    let cross = cube2.polar().unwrap();
    assert!((cross.volume() - 2.0).abs() < 1e-12);
    let back = cross.polar().unwrap();
    assert!((back.volume() - 4.0).abs() < 1e-12);

    let cube3: Polytope<f64> = Polytope::centered_cube(3, 1.0).unwrap();
    let oct = cube3.polar().unwrap();
    assert!((oct.volume() - 4.0 / 3.0).abs() < 1e-9);
    assert!((oct.polar().unwrap().volume() - 8.0).abs() < 1e-9);

    let seg: Polytope<f64> = Polytope::from_points(1, &[vec![-0.5], vec![2.0]]).unwrap();
    let pol = seg.polar().unwrap();
    assert!((pol.volume() - 2.5).abs() < 1e-12);
    assert!((pol.polar().unwrap().volume() - 2.5).abs() < 1e-12);

    for body in fixed_polygons() {
        // Recenter so the origin is interior, then polarity is involutive.
        let c = body.vertex_centroid();
        let shift: Vec<f64> = c.iter().map(|v| -v).collect();
        let centered = body.translate(&shift);
        let again = centered.polar().unwrap().polar().unwrap();
        let r = again.volume() / centered.volume();
        assert!((r - 1.0).abs() < 1e-9, "{r}");
    }
}

#[test]
fn minkowski_sums_add_support_functions() {
    let polys = fixed_polygons();
    let (k, l) = (&polys[0], &polys[2]);
    let sum = k.minkowski_sum(l).unwrap();
    for i in 0..16 {
        let t = i as f64 * std::f64::consts::TAU / 16.0;
        let dir = [t.cos(), t.sin()];
        let gap = sum.support(&dir) - k.support(&dir) - l.support(&dir);
        assert!(gap.abs() < 1e-12, "dir {i}: {gap}");
    }
    // Brunn-Minkowski in the plane: sqrt of area is superadditive.
    assert!(sum.volume().sqrt() >= k.volume().sqrt() + l.volume().sqrt() - 1e-9);
    assert!(hull_duality_check(&sum, 1e-9).unwrap());
}

#[test]
fn facet_halfspaces_reproduce_membership() {
    for body in fixed_polygons() {
        let facets: Vec<Halfspace<f64>> = body.facets();
        let c = body.vertex_centroid();
        assert!(facets.iter().all(|hs| hs.slack(&c) > 0.0));
        for v in body.vertices() {
            assert!(facets.iter().all(|hs| hs.slack(v) > -1e-9));
        }
        let outside = vec![10.0, 10.0];
        assert!(facets.iter().any(|hs| hs.slack(&outside) < 0.0));
    }
}
