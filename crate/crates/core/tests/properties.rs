use std::f64::consts::{FRAC_PI_2, TAU};

use ccgeom::config::SYMMETRY_TOL;
use ccgeom::cycles::{estimate_curvature, curvature_of, Cycle, CycleParams, Side};
use ccgeom::harness::{run_theorem2, Body, HalfSpec, Placement, PlacementSpec, Scene};
use ccgeom::regions::{intersect_regions, ConvexRegion};
use ccgeom::space::model::{angle_distortion, angle_distortion_bounds, from_model, klein, to_model, ModelKind};
use ccgeom::space::{distance, Isometry, Point, Space};
use ccgeom::symmetry::classify;
use proptest::prelude::*;

fn space() -> impl Strategy<Value = Space> {
    prop_oneof![Just(Space::Sphere), Just(Space::Euclidean), Just(Space::Hyperbolic)]
}

fn model_xy() -> impl Strategy<Value = (f64, f64)> {
    (0.0..0.7f64, 0.0..TAU).prop_map(|(r, t)| (r * t.cos(), r * t.sin()))
}

fn placement() -> impl Strategy<Value = Placement> {
    (0.0..TAU, 0.0..TAU, 0.0..1.0f64).prop_map(|(angle, axis, length)| Placement { angle, axis, length })
}

fn reflection(space: Space, t: f64) -> Isometry {
    let o = space.origin();
    Isometry::reflection_through(&o, &klein(space, 0.3 * t.cos(), 0.3 * t.sin()).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congruences_preserve_distance(s in space(), a in model_xy(), b in model_xy(), pl in placement(), flip in 0.0..TAU) {
        let (p, q) = (klein(s, a.0, a.1).unwrap(), klein(s, b.0, b.1).unwrap());
        for iso in [pl.isometry(s).unwrap(), reflection(s, flip)] {
            let d0 = distance(&p, &q).unwrap();
            let d1 = distance(&iso.apply(&p).unwrap(), &iso.apply(&q).unwrap()).unwrap();
            prop_assert!((d0 - d1).abs() <= 1e-9 * (1.0 + d0));
        }
    }

    #[test]
    fn isometry_inverse_round_trips(s in space(), a in model_xy(), pl in placement()) {
        let p = klein(s, a.0, a.1).unwrap();
        let iso = pl.isometry(s).unwrap();
        let back = iso.inverse().apply(&iso.apply(&p).unwrap()).unwrap();
        prop_assert!(distance(&p, &back).unwrap() < 1e-9);
    }

    #[test]
    fn model_charts_round_trip(s in space(), a in model_xy()) {
        let p = klein(s, a.0, a.1).unwrap();
        for m in [ModelKind::Collinear, ModelKind::Conformal] {
            let q = from_model(&to_model(&p, m).unwrap()).unwrap();
            prop_assert!((p.coords() - q.coords()).amax() < 1e-12);
        }
    }

    #[test]
    fn distortion_stays_within_sharp_bounds(r in 0.0..1.5f64, phi in 0.0..TAU, sphere in any::<bool>()) {
        let s = if sphere { Space::Sphere } else { Space::Hyperbolic };
        let (lo, hi) = angle_distortion_bounds(s, r).unwrap();
        let v = angle_distortion(s, r, phi).unwrap();
        prop_assert!(v >= lo - 1e-12 && v <= hi + 1e-12);
    }

    #[test]
    fn side_of_is_equivariant(s in space(), c in model_xy(), radius in 0.1..1.0f64, p in model_xy(), pl in placement()) {
        let cycle = Cycle::circle(klein(s, c.0, c.1).unwrap(), radius).unwrap();
        let iso = pl.isometry(s).unwrap();
        let moved = cycle.transformed(&iso).unwrap();
        let p = klein(s, p.0, p.1).unwrap();
        prop_assert!((cycle.side_of(&p) - moved.side_of(&iso.apply(&p).unwrap())).abs() < 1e-9);
    }

    #[test]
    fn turning_angle_estimates_curvature(c in model_xy(), radius in 0.2..1.4f64, l in 0.05..2.0f64, t in 0.0..TAU) {
        let h = Space::Hyperbolic;
        let circle = Cycle::circle(klein(h, c.0, c.1).unwrap(), radius).unwrap();
        let hyper = Cycle::hypercycle_over(&klein(h, c.0, c.1).unwrap(), &klein(h, 0.0, 0.8).unwrap(), l);
        prop_assume!(hyper.is_ok());
        for cyc in [circle, hyper.unwrap()] {
            let est = estimate_curvature(&cyc, t, 1e-3).unwrap();
            prop_assert!((est - curvature_of(&cyc)).abs() < 1e-3);
        }
    }

    #[test]
    fn intersection_is_symmetric_in_its_arguments(s in space(), a in model_xy(), b in model_xy(), r1 in 0.3..0.9f64, r2 in 0.3..0.9f64) {
        let k = ConvexRegion::disk(klein(s, a.0, a.1).unwrap(), r1).unwrap();
        let l = ConvexRegion::disk(klein(s, b.0, b.1).unwrap(), r2).unwrap();
        let (x, y) = (intersect_regions(&k, &l).unwrap(), intersect_regions(&l, &k).unwrap());
        prop_assert_eq!(x.label(), y.label());
        if let (Some(x), Some(y)) = (x.region(), y.region()) {
            prop_assert!(x.same_constraints(y));
            let w = *x.witness();
            prop_assert!(y.contains(&w).unwrap().inside);
        }
    }

    #[test]
    fn membership_is_equivariant(s in space(), a in model_xy(), p in model_xy(), pl in placement()) {
        let k = ConvexRegion::disk(klein(s, a.0, a.1).unwrap(), 0.6).unwrap()
            .intersect(&ConvexRegion::disk(s.origin(), 0.7).unwrap());
        prop_assume!(k.is_ok());
        let k = k.unwrap();
        let iso = pl.isometry(s).unwrap();
        let moved = k.placed(&iso).unwrap();
        let p = klein(s, p.0, p.1).unwrap();
        let (m0, m1) = (k.contains(&p).unwrap(), moved.contains(&iso.apply(&p).unwrap()).unwrap());
        prop_assert!((m0.margin - m1.margin).abs() < 1e-9);
    }

    #[test]
    fn vertex_outer_angles_and_curvature_sum_to_euler(s in space(), a in model_xy(), b in model_xy(), c in model_xy()) {
        let pts: Vec<Point> = [a, b, c].iter().map(|q| klein(s, q.0, q.1).unwrap()).collect();
        let tri = ConvexRegion::polygon(&pts).or_else(|_| ConvexRegion::polygon(&[pts[0], pts[2], pts[1]]));
        prop_assume!(tri.is_ok());
        let tri = tri.unwrap();
        prop_assume!(tri.vertices().len() == 3);
        // Gauss–Bonnet: total turning = 2π − K · area
        let turn: f64 = tri.vertices().iter().map(|v| v.outer_angle).sum();
        let area = ccgeom::regions::area(&tri, 720).unwrap();
        prop_assert!((turn + s.curvature() * area - TAU).abs() < 1e-3 * (1.0 + area));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_is_invariant_under_congruence(s in space(), a in 0.3..0.8f64, b in 0.3..0.8f64, t in 0.6..2.5f64, pl in placement(), flip in 0.0..TAU) {
        let o = s.origin();
        let p = |r: f64, th: f64| ccgeom::space::exp(&o, &(ccgeom::space::tangent_frame(&o).0 * (r * th.cos()) + ccgeom::space::tangent_frame(&o).1 * (r * th.sin())));
        let tri = ConvexRegion::polygon(&[p(a, 0.0), p(b, t), p(0.5, t + 1.8)]);
        prop_assume!(tri.is_ok());
        let tri = tri.unwrap();
        prop_assume!(tri.is_compact() && tri.vertices().len() == 3);
        let base = classify(&tri, SYMMETRY_TOL);
        prop_assume!(base.is_ok());
        let base = base.unwrap().classification.signature();
        for iso in [pl.isometry(s).unwrap(), reflection(s, flip)] {
            let moved = classify(&tri.placed(&iso).unwrap(), SYMMETRY_TOL);
            prop_assume!(moved.is_ok());
            prop_assert_eq!(&moved.unwrap().classification.signature(), &base);
        }
    }

    #[test]
    fn scenes_round_trip_through_json(c in model_xy(), radius in 0.1..1.0f64, angle in 0.0..TAU, seed in any::<u64>()) {
        let scene = Scene {
            space: Space::Hyperbolic,
            seed,
            name: Some("round trip".into()),
            bodies: vec![
                Body { halves: vec![HalfSpec { cycle: CycleParams::Circle { centre: [c.0, c.1], radius }, side: Side::Convex }], placement: None },
                Body {
                    halves: vec![HalfSpec { cycle: CycleParams::Hypercycle { through: [[0.0, -0.5], [0.0, 0.5]], distance: radius }, side: Side::Convex }],
                    placement: Some(PlacementSpec::Rotation { centre: [0.1, 0.0], angle }),
                },
            ],
        };
        prop_assert_eq!(Scene::from_json(&scene.to_json()).unwrap(), scene);
    }
}

#[test]
fn reports_are_deterministic() {
    let a = run_theorem2(Space::Hyperbolic, 1.0, 6, 42).unwrap();
    let b = run_theorem2(Space::Hyperbolic, 1.0, 6, 42).unwrap();
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
    assert_eq!(a.summary(), b.summary());
}

#[test]
fn sphere_rejects_radii_beyond_a_quarter_turn() {
    assert!(run_theorem2(Space::Sphere, FRAC_PI_2, 1, 0).is_err());
}
