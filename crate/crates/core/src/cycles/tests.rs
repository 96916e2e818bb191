use super::*;
use crate::space::model::{from_model, to_model, ModelKind, ModelPoint};
use crate::space::{distance, exp};
use approx::assert_abs_diff_eq;
use std::f64::consts::PI;

fn pt(space: Space, x: f64, y: f64) -> Point {
    exp(&space.origin(), &Vec3::new(x, y, 0.0))
}

fn all_kinds() -> Vec<Cycle> {
    let h = Space::Hyperbolic;
    let n = match Cycle::geodesic(&pt(h, 0.2, -0.5), &pt(h, 0.6, 0.4)).unwrap().shape {
        Shape::Geodesic { normal } => normal,
        _ => unreachable!(),
    };
    vec![
        Cycle::circle(pt(Space::Sphere, 0.2, 0.1), 0.7).unwrap(),
        Cycle::geodesic(&pt(Space::Sphere, 0.2, 0.1), &pt(Space::Sphere, -0.3, 0.5)).unwrap(),
        Cycle::circle(Point::euclidean(1.0, -2.0), 1.5).unwrap(),
        Cycle::geodesic(&Point::euclidean(1.0, 0.0), &Point::euclidean(0.0, 3.0)).unwrap(),
        Cycle::circle(pt(h, 0.3, 0.2), 1.1).unwrap(),
        Cycle::paracycle_at(h, 0.9, 0.4).unwrap(),
        Cycle::hypercycle(h, &n, 0.6).unwrap(),
        Cycle::geodesic(&pt(h, 0.2, -0.5), &pt(h, 0.6, 0.4)).unwrap(),
    ]
}

#[test]
fn euclidean_circle_contains_its_defining_point() {
    let c = Cycle::circle(Point::euclidean(0.0, 0.0), 2.0).unwrap();
    assert_abs_diff_eq!(c.side_of(&Point::euclidean(2.0, 0.0)), 0.0, epsilon = 1e-15);
}

#[test]
fn parameterizations_lie_on_the_cycle_and_have_constant_speed() {
    for c in all_kinds() {
        let h = 1e-4;
        for i in -5..=5 {
            let t = 0.37 * i as f64;
            let p = c.point_at(t);
            assert!(c.residual(&p) <= 1e-10, "{:?} residual {}", c.kind(), c.residual(&p));
            assert_abs_diff_eq!(c.param_of(&p), if c.is_closed() { t.rem_euclid(TAU) } else { t }, epsilon = 1e-9);
            let d = distance(&c.point_at(t - h), &c.point_at(t + h)).unwrap();
            assert_abs_diff_eq!(d / (2.0 * h), c.speed(), epsilon = 1e-6 * c.speed());
        }
    }
}

#[test]
fn convex_side_is_on_the_left() {
    for c in all_kinds() {
        for t in [-0.8, 0.1, 1.3] {
            let p = c.point_at(t);
            let left = crate::space::rotate_tangent(&p, &c.tangent_at(t));
            let q = exp(&p, &(left * 1e-3));
            assert!(c.side_of(&q) > 0.0, "{:?} at {t}", c.kind());
        }
    }
}

#[test]
fn side_of_sign_conventions() {
    let c = Cycle::circle(pt(Space::Hyperbolic, 0.1, 0.2), 0.5).unwrap();
    assert!(c.side_of(&pt(Space::Hyperbolic, 0.1, 0.2)) > 0.0);
    // the line x = 0 with the convex side x ≤ 0 (left of the upward direction)
    let line = Cycle::geodesic(&Point::euclidean(0.0, 0.0), &Point::euclidean(0.0, 1.0)).unwrap();
    assert!(line.side_of(&Point::euclidean(1.0, 0.0)) < 0.0);
    assert_abs_diff_eq!(line.side_of(&Point::euclidean(-2.5, 7.0)), 2.5, epsilon = 1e-15);
}

#[test]
fn hypercycle_points_keep_their_distance_to_the_base() {
    let h = Space::Hyperbolic;
    let base = Cycle::geodesic(&pt(h, -0.4, 0.1), &pt(h, 0.5, 0.3)).unwrap();
    let hc = Cycle::hypercycle(h, &base.base_normal().unwrap(), 0.8).unwrap();
    for i in 0..50 {
        let p = hc.point_at(-3.0 + 0.12 * i as f64);
        // distance to the base line by coarse-to-fine minimization over its points
        let (mut t0, mut step) = (0.0, 0.5);
        for _ in 0..12 {
            let d = |t: f64| distance(&p, &base.point_at(t)).unwrap();
            t0 = (-20..=20).map(|k| t0 + step * k as f64).min_by(|a, b| d(*a).total_cmp(&d(*b))).unwrap();
            step /= 10.0;
        }
        let best = distance(&p, &base.point_at(t0)).unwrap();
        assert_abs_diff_eq!(best, 0.8, epsilon = 1e-7);
    }
}

#[test]
fn paracycle_is_a_tangent_circle_in_the_conformal_model() {
    let h = Space::Hyperbolic;
    // ideal point at conformal (1, 0), through the model centre
    let c = Cycle::paracycle(&Vec3::new(1.0, 0.0, 1.0), &h.origin()).unwrap();
    let pts: Vec<_> = (0..9)
        .map(|i| to_model(&c.point_at(-2.0 + 0.5 * i as f64), ModelKind::Conformal).unwrap().u)
        .collect();
    // circle fit through the first three, residuals on the rest
    let (a, b, cc) = (pts[0], pts[4], pts[8]);
    let d = 2.0 * (a.x * (b.y - cc.y) + b.x * (cc.y - a.y) + cc.x * (a.y - b.y));
    let ux = (a.norm_squared() * (b.y - cc.y) + b.norm_squared() * (cc.y - a.y) + cc.norm_squared() * (a.y - b.y)) / d;
    let uy = (a.norm_squared() * (cc.x - b.x) + b.norm_squared() * (a.x - cc.x) + cc.norm_squared() * (b.x - a.x)) / d;
    let centre = nalgebra::Vector2::new(ux, uy);
    let rad = (a - centre).norm();
    for p in &pts {
        assert_abs_diff_eq!((p - centre).norm(), rad, epsilon = 1e-10);
    }
    // internally tangent to the unit circle at (1, 0)
    assert!((centre.norm() + rad - 1.0).abs() < 1e-8);
    assert_abs_diff_eq!(centre.y, 0.0, epsilon = 1e-10);
    assert_abs_diff_eq!(rad, 0.5, epsilon = 1e-10);
}

#[test]
fn curvature_table_values() {
    let h = Space::Hyperbolic;
    let c = Cycle::circle(h.origin(), 1.0).unwrap();
    assert_abs_diff_eq!(curvature_of(&c), 1.3130352854993312, epsilon = 1e-12);
    assert_eq!(curvature_of(&Cycle::paracycle_at(h, 0.0, 0.0).unwrap()), 1.0);
    let line = Cycle::geodesic(&Point::euclidean(0.0, 0.0), &Point::euclidean(1.0, 0.0)).unwrap();
    assert_eq!(curvature_of(&line), 0.0);
    let n = Vec3::new(1.0, 0.0, 0.0);
    assert_abs_diff_eq!(curvature_of(&Cycle::hypercycle(h, &n, 0.5).unwrap()), 0.46211715726000974, epsilon = 1e-15);
    assert_abs_diff_eq!(curvature_of(&Cycle::circle(Space::Sphere.origin(), PI / 2.0).unwrap()), 0.0, epsilon = 1e-15);
}

#[test]
fn estimator_matches_the_table() {
    for c in all_kinds() {
        for t in [0.0, 0.9, -1.7] {
            let est = estimate_curvature(&c, t, 1e-3).unwrap();
            assert_abs_diff_eq!(est, curvature_of(&c), epsilon = 1e-5);
        }
    }
    let c = Cycle::circle(Space::Hyperbolic.origin(), 1.0).unwrap();
    let arc = CycleArc::full(c);
    let pts = sample_arc(&arc, 1000).unwrap();
    let h = distance(&pts[0], &pts[1]).unwrap();
    let turn = crate::space::oriented_angle(
        &pts[1],
        &-crate::space::direction(&pts[1], &pts[0]).unwrap(),
        &crate::space::direction(&pts[1], &pts[2]).unwrap(),
    );
    assert_abs_diff_eq!(turn / h, 1f64.tanh().recip(), epsilon = 1e-4);
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(matches!(
        Cycle::circle(Space::Sphere.origin(), 1.7),
        Err(GeomError::OutOfRange { .. })
    ));
    assert!(matches!(
        Cycle::paracycle_at(Space::Euclidean, 0.0, 0.0),
        Err(GeomError::UnsupportedCycle { .. })
    ));
    assert!(matches!(
        Cycle::hypercycle(Space::Sphere, &Vec3::x(), 0.3),
        Err(GeomError::UnsupportedCycle { .. })
    ));
    assert!(matches!(
        Cycle::hypercycle(Space::Hyperbolic, &Vec3::x(), 0.0),
        Err(GeomError::OutOfRange { .. })
    ));
}

#[test]
fn level_sets_round_trip() {
    for c in all_kinds() {
        if c.space() == Space::Euclidean {
            continue;
        }
        if let Some((cv, k)) = c.level_set() {
            let d = Cycle::from_level_set(c.space(), &cv, k).unwrap();
            assert_eq!(d.kind().name(), c.kind().name());
            assert!(d.coincides(&c) || c.space() == Space::Sphere, "{:?}", c.kind());
            for t in [0.2, 1.4] {
                assert!(d.residual(&c.point_at(t)) < 1e-10);
            }
        }
    }
}

#[test]
fn sampling() {
    let c = Cycle::circle(Point::euclidean(0.0, 0.0), 1.0).unwrap();
    let arc = CycleArc::full(c);
    let two = sample_arc(&arc, 2).unwrap();
    assert_abs_diff_eq!(distance(&two[0], &two[1]).unwrap(), 0.0, epsilon = 1e-15);
    let five = sample_arc(&arc, 5).unwrap();
    assert_abs_diff_eq!(five[1].coords().y, 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(five[2].coords().x, -1.0, epsilon = 1e-15);
    let line = Cycle::geodesic(&Point::euclidean(0.0, 0.0), &Point::euclidean(1.0, 0.0)).unwrap();
    assert_eq!(sample_arc(&CycleArc::full(line), 10), Err(GeomError::UnboundedArc));
    let clipped = sample_arc_clipped(&CycleArc::full(line), 11, 5.0).unwrap();
    assert_abs_diff_eq!(clipped[0].coords().x, -5.0, epsilon = 1e-9);
    assert_abs_diff_eq!(clipped[10].coords().x, 5.0, epsilon = 1e-9);
    for w in clipped.windows(2) {
        assert_abs_diff_eq!(distance(&w[0], &w[1]).unwrap(), 1.0, epsilon = 1e-8);
    }
}

#[test]
fn equilateral_circle_pair() {
    let a = Cycle::circle(Point::euclidean(0.0, 0.0), 1.0).unwrap();
    let b = Cycle::circle(Point::euclidean(1.0, 0.0), 1.0).unwrap();
    let mut pts = intersect_cycles(&a, &b).unwrap().points();
    pts.sort_by(|p, q| p.coords().y.total_cmp(&q.coords().y));
    assert_abs_diff_eq!(pts[0].coords().x, 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(pts[0].coords().y, -(3f64.sqrt()) / 2.0, epsilon = 1e-15);
    assert_abs_diff_eq!(pts[1].coords().y, 3f64.sqrt() / 2.0, epsilon = 1e-15);
}

#[test]
fn concentric_and_coincident() {
    for s in Space::ALL {
        let o = pt(s, 0.1, 0.0);
        let a = Cycle::circle(o, 0.5).unwrap();
        let b = Cycle::circle(o, 0.8).unwrap();
        assert_eq!(intersect_cycles(&a, &b).unwrap().count(), 0);
        assert_eq!(intersect_cycles(&a, &a).unwrap(), Intersection::Coincident);
    }
}

#[test]
fn parallel_geodesics_do_not_meet() {
    let h = Space::Hyperbolic;
    let ideal = |th: f64| {
        from_model(&ModelPoint::new(h, ModelKind::Collinear, 0.999999 * th.cos(), 0.999999 * th.sin())).unwrap()
    };
    // chords from the common boundary point (1, 0) to (cos 2, sin 2) and (cos 4, sin 4)
    let n1 = Vec3::new(0.0, 0.0, 0.0);
    let _ = n1;
    let line = |a: f64, b: f64| {
        let (p, q) = (Vec3::new(a.cos(), a.sin(), 1.0), Vec3::new(b.cos(), b.sin(), 1.0));
        let c = p.cross(&q);
        Cycle::geodesic_from_normal(h, &Vec3::new(c.x, c.y, -c.z)).unwrap()
    };
    let g1 = line(0.0, 2.0);
    let g2 = line(0.0, 4.0);
    for t in [-2.0, 0.0, 3.0] {
        assert!(g1.residual(&g1.point_at(t)) < 1e-12);
    }
    assert!(g1.residual(&ideal(1.0)) > 0.0);
    assert_eq!(intersect_cycles(&g1, &g2).unwrap().count(), 0);
}

#[test]
fn tangent_circles() {
    let a = Cycle::circle(Point::euclidean(0.0, 0.0), 1.0).unwrap();
    let b = Cycle::circle(Point::euclidean(2.0, 0.0), 1.0).unwrap();
    match intersect_cycles(&a, &b).unwrap() {
        Intersection::Tangent(p) => assert_abs_diff_eq!(p.coords().x, 1.0, epsilon = 1e-12),
        r => panic!("{r:?}"),
    }
    let h = Space::Hyperbolic;
    let c1 = Cycle::circle(pt(h, -0.5, 0.0), 0.5).unwrap();
    let c2 = Cycle::circle(pt(h, 0.5, 0.0), 0.5).unwrap();
    let r = intersect_cycles(&c1, &c2).unwrap();
    assert!(matches!(r, Intersection::Tangent(_)), "{r:?}");
}

#[test]
fn intersection_points_satisfy_both_equations() {
    let cs = all_kinds();
    for (i, a) in cs.iter().enumerate() {
        for b in &cs[i + 1..] {
            if a.space() != b.space() {
                continue;
            }
            if let Intersection::Points(v) = intersect_cycles(a, b).unwrap() {
                for p in v {
                    assert!(a.residual(&p) <= 1e-9 && b.residual(&p) <= 1e-9);
                }
            }
        }
    }
}

#[test]
fn transformed_cycles_keep_their_kind_and_curvature() {
    for c in all_kinds() {
        let s = c.space();
        let iso = crate::space::Isometry::rotation(&pt(s, 0.3, -0.1), 0.8)
            .compose(&crate::space::Isometry::reflection_through(&pt(s, 0.0, 0.1), &pt(s, 0.4, 0.2)).unwrap());
        let d = c.transformed(&iso).unwrap();
        assert_eq!(curvature_of(&d), curvature_of(&c));
        for t in [0.0, 0.5, 2.0] {
            let img = iso.apply(&c.point_at(t)).unwrap();
            assert!(d.residual(&img) < 1e-10);
            let q = exp(&c.point_at(t), &(crate::space::rotate_tangent(&c.point_at(t), &c.tangent_at(t)) * 0.01));
            assert_abs_diff_eq!(d.side_of(&iso.apply(&q).unwrap()), c.side_of(&q), epsilon = 1e-10);
        }
    }
}
