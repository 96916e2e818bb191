use super::*;
use crate::config::SYMMETRY_TOL;
use crate::space::model::klein;
use crate::space::Space;

fn lens(space: Space, r1: f64, r2: f64) -> ConvexRegion {
    let (a, b) = match space {
        Space::Euclidean => (Point::euclidean(-0.4, 0.1), Point::euclidean(0.5, -0.2)),
        _ => (klein(space, -0.2, 0.05).unwrap(), klein(space, 0.25, -0.1).unwrap()),
    };
    ConvexRegion::disk(a, r1).unwrap().intersect(&ConvexRegion::disk(b, r2).unwrap()).unwrap()
}

fn poly(space: Space, pts: &[(f64, f64)]) -> ConvexRegion {
    let v: Vec<Point> = pts
        .iter()
        .map(|&(x, y)| if space == Space::Euclidean { Point::euclidean(x, y) } else { klein(space, x, y).unwrap() })
        .collect();
    ConvexRegion::polygon(&v).unwrap()
}

fn regular(space: Space, n: usize, rad: f64, phase: f64) -> ConvexRegion {
    let pts: Vec<(f64, f64)> =
        (0..n).map(|k| phase + TAU * k as f64 / n as f64).map(|t| (rad * t.cos(), rad * t.sin())).collect();
    poly(space, &pts)
}

#[test]
fn congruent_lens_is_central_and_axial() {
    for space in Space::ALL {
        let r = if space == Space::Sphere { 0.8 } else { 1.0 };
        let rep = classify(&lens(space, r, r), SYMMETRY_TOL).unwrap();
        assert_eq!(rep.classification.label(), "central_and_axial", "{space:?}");
        assert_eq!(rep.classification.axes().len(), 2);
        assert!(rep.max_residual <= SYMMETRY_TOL * rep.diameter);
    }
}

#[test]
fn incongruent_lens_axis_through_centres() {
    for space in Space::ALL {
        let l = lens(space, 1.0, 1.3);
        let rep = classify(&l, SYMMETRY_TOL).unwrap();
        assert_eq!(rep.classification.label(), "axial_only", "{space:?}");
        let axis = &rep.classification.axes()[0];
        for h in l.halves() {
            let c = h.cycle.centre().unwrap();
            assert!(axis.residual(&c) <= 1e-6 * rep.diameter);
        }
    }
}

#[test]
fn two_vertex_candidates() {
    let l = lens(Space::Hyperbolic, 1.0, 1.3);
    assert_eq!(l.vertices().len(), 2);
    let c = candidate_congruences(&l).unwrap();
    assert_eq!(c.len(), 4);
    assert!(c[0].is_identity(0.0));
}

#[test]
fn disk_full_group() {
    for space in Space::ALL {
        let d = ConvexRegion::disk(space.origin(), 0.7).unwrap();
        for c in candidate_congruences(&d).unwrap() {
            assert!(residual(&d, &c).unwrap() < 1e-9);
        }
        assert_eq!(classify(&d, SYMMETRY_TOL).unwrap().classification.label(), "full_disk_group");
        assert_eq!(oracle_classify(&d, SYMMETRY_TOL).unwrap().classification.label(), "full_disk_group");
    }
}

#[test]
fn triangles() {
    for space in Space::ALL {
        let scalene = poly(space, &[(-0.3, -0.2), (0.4, -0.25), (0.05, 0.35)]);
        let rep = classify(&scalene, SYMMETRY_TOL).unwrap();
        assert_eq!(rep.classification, Classification::Trivial);
        assert_eq!(rep.witnesses.len(), 1);
        let orc = oracle_classify(&scalene, SYMMETRY_TOL).unwrap();
        assert_eq!(orc.classification.label(), "trivial");

        let iso = poly(space, &[(-0.3, -0.2), (0.3, -0.2), (0.0, 0.4)]);
        let rep = classify(&iso, SYMMETRY_TOL).unwrap();
        assert_eq!(rep.classification.label(), "axial_only");
        assert_eq!(rep.classification.axes().len(), 1);

        let eq = regular(space, 3, 0.4, 0.3);
        let rep = classify(&eq, SYMMETRY_TOL).unwrap();
        assert_eq!(rep.classification.signature(), ("rotational".to_string(), 3, 3));
    }
}

#[test]
fn square_is_dihedral_of_order_four() {
    let sq = regular(Space::Euclidean, 4, 1.0, 0.2);
    let rep = classify(&sq, SYMMETRY_TOL).unwrap();
    assert_eq!(rep.classification.signature(), ("rotational".to_string(), 4, 4));
    let orc = oracle_classify(&sq, SYMMETRY_TOL).unwrap();
    assert_eq!(orc.classification.signature(), rep.classification.signature());
}

#[test]
fn rectangle_and_parallelogram() {
    let rect = poly(Space::Euclidean, &[(-1.0, -0.5), (1.0, -0.5), (1.0, 0.5), (-1.0, 0.5)]);
    let rep = classify(&rect, SYMMETRY_TOL).unwrap();
    assert_eq!(rep.classification.signature(), ("central_and_axial".to_string(), 2, 2));

    // point reflection about the origin maps the vertex list to itself
    let quad = poly(Space::Hyperbolic, &[(-0.5, -0.2), (0.3, -0.3), (0.5, 0.2), (-0.3, 0.3)]);
    let rep = classify(&quad, SYMMETRY_TOL).unwrap();
    assert_eq!(rep.classification.label(), "central_only");
    let c = rep.classification.centre().unwrap();
    assert!(crate::space::distance(c, &Space::Hyperbolic.origin()).unwrap() < 1e-9);
    let orc = oracle_classify(&quad, SYMMETRY_TOL).unwrap();
    assert_eq!(orc.classification.label(), "central_only");
}

#[test]
fn non_compact_refused() {
    let h = ConvexRegion::half_plane(&Point::euclidean(0.0, 0.0), &Point::euclidean(1.0, 0.0)).unwrap();
    assert_eq!(classify(&h, SYMMETRY_TOL), Err(GeomError::NonCompact));
    assert_eq!(candidate_congruences(&h), Err(GeomError::NonCompact));
    assert!(oracle_classify(&h, SYMMETRY_TOL).is_err());
}

#[test]
fn witnesses_are_closed_under_composition() {
    let hex = regular(Space::Hyperbolic, 6, 0.5, 0.1);
    let rep = classify(&hex, SYMMETRY_TOL).unwrap();
    assert_eq!(rep.classification.signature(), ("rotational".to_string(), 6, 6));
    for a in &rep.witnesses {
        for b in &rep.witnesses {
            let ab = a.iso.compose(&b.iso);
            assert!(rep.witnesses.iter().any(|w| w.iso.matrix_distance(&ab) < 1e-6));
        }
    }
}

#[test]
fn conjugation_equivariance() {
    let phi = Isometry::rotation(&klein(Space::Hyperbolic, 0.2, -0.1).unwrap(), 0.9)
        .compose(&Isometry::reflection_through(&Space::Hyperbolic.origin(), &klein(Space::Hyperbolic, 0.3, 0.4).unwrap()).unwrap());
    let r = lens(Space::Hyperbolic, 1.0, 1.0);
    let moved = r.placed(&phi).unwrap();
    let a = classify(&r, SYMMETRY_TOL).unwrap();
    let b = classify(&moved, SYMMETRY_TOL).unwrap();
    assert_eq!(a.classification.signature(), b.classification.signature());
    for w in &a.witnesses {
        let conj = phi.compose(&w.iso).compose(&phi.inverse());
        assert!(b.witnesses.iter().any(|v| v.iso.matrix_distance(&conj) < 1e-6));
    }
}

#[test]
fn ambiguity_is_reported() {
    let tri = poly(Space::Euclidean, &[(-0.3, -0.2), (0.3, -0.2), (0.0, 0.4)]);
    let tri2 = poly(Space::Euclidean, &[(-0.3, -0.2), (0.3, -0.2), (1e-7, 0.4)]);
    let rep = classify(&tri, SYMMETRY_TOL).unwrap();
    let refl = rep.witnesses.iter().find(|w| !w.iso.is_direct()).unwrap().iso;
    let d = diameter(&tri2).unwrap();
    // candidates of tri2 include its own near-bisector; find its residual
    let cands = candidate_congruences(&tri2).unwrap();
    let res = cands
        .iter()
        .filter(|c| !c.is_identity(1e-12))
        .map(|c| residual(&tri2, c).unwrap())
        .fold(f64::INFINITY, f64::min);
    assert!(res > 0.0 && residual(&tri2, &refl).unwrap() > 0.0);
    let tol = res / (1.5 * d);
    assert!(matches!(classify(&tri2, tol), Err(GeomError::AmbiguousNearTolerance { .. })));
}

#[test]
fn axes_for_cycle_pairs() {
    let e = Space::Euclidean;
    let a = Cycle::circle(Point::euclidean(0.0, 0.0), 1.0).unwrap();
    let b = Cycle::circle(Point::euclidean(1.0, 1.0), 1.5).unwrap();
    let ax = axis_for_cycle_pair(&a, &b).unwrap();
    assert!(ax.residual(&Point::euclidean(0.0, 0.0)) < 1e-12);
    assert!(ax.residual(&Point::euclidean(1.0, 1.0)) < 1e-12);
    let l1 = Cycle::geodesic(&Point::euclidean(0.0, 0.0), &Point::euclidean(1.0, 0.0)).unwrap();
    let l2 = Cycle::geodesic(&Point::euclidean(0.0, 1.0), &Point::euclidean(1.0, 1.0)).unwrap();
    assert!(axis_for_cycle_pair(&l1, &l2).is_none());
    assert!(axis_for_cycle_pair(&a, &a).is_none());
    let ax = axis_for_cycle_pair(&b, &l1).unwrap();
    assert!(ax.residual(&Point::euclidean(1.0, 1.0)) < 1e-12);
    assert!(ax.residual(&Point::euclidean(1.0, 0.0)) < 1e-12);
    let _ = e;

    let h = Space::Hyperbolic;
    let c = klein(h, 0.1, 0.3).unwrap();
    let circle = Cycle::circle(c, 0.5).unwrap();
    let hyp = Cycle::hypercycle_over(&klein(h, -0.5, -0.2).unwrap(), &klein(h, 0.5, -0.1).unwrap(), 0.4).unwrap();
    let ax = axis_for_cycle_pair(&circle, &hyp).unwrap();
    assert!(ax.residual(&c) < 1e-12);
    let (m, n) = (ax.base_normal().unwrap(), hyp.base_normal().unwrap());
    assert!(h.inner(&m, &n).abs() < 1e-12);

    let h1 = Cycle::hypercycle_over(&klein(h, -0.9, -0.3).unwrap(), &klein(h, 0.9, -0.4).unwrap(), 0.2).unwrap();
    let h2 = Cycle::hypercycle_over(&klein(h, 0.8, 0.3).unwrap(), &klein(h, -0.8, 0.5).unwrap(), 0.3).unwrap();
    let ax = axis_for_cycle_pair(&h1, &h2).unwrap();
    let m = ax.base_normal().unwrap();
    assert!(h.inner(&m, &h1.base_normal().unwrap()).abs() < 1e-12);
    assert!(h.inner(&m, &h2.base_normal().unwrap()).abs() < 1e-12);

    // base lines through a common point
    let g1 = Cycle::geodesic(&h.origin(), &klein(h, 0.5, 0.0).unwrap()).unwrap();
    let g2 = Cycle::geodesic(&h.origin(), &klein(h, 0.0, 0.5).unwrap()).unwrap();
    assert!(axis_for_cycle_pair(&g1, &g2).is_none());
}

