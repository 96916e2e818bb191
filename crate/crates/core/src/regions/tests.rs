use super::*;
use crate::space::model::klein;
use approx::assert_abs_diff_eq;
use std::f64::consts::PI;

fn pt(space: Space, x: f64, y: f64) -> Point {
    exp(&space.origin(), &Vec3::new(x, y, 0.0))
}

fn lens(space: Space, d: f64, r1: f64, r2: f64) -> ConvexRegion {
    let a = ConvexRegion::disk(pt(space, -d / 2.0, 0.1), r1).unwrap();
    let b = ConvexRegion::disk(pt(space, d / 2.0, 0.1), r2).unwrap();
    a.intersect(&b).unwrap()
}

#[test]
fn disk_membership() {
    let d = ConvexRegion::disk(Point::euclidean(0.0, 0.0), 1.0).unwrap();
    assert!(d.contains(&Point::euclidean(0.5, 0.0)).unwrap().inside);
    assert!(!d.contains(&Point::euclidean(2.0, 0.0)).unwrap().inside);
    assert!(d.contains(d.witness()).unwrap().margin > 0.0);
}

#[test]
fn strip_membership_and_chains() {
    let s = ConvexRegion::strip(&Point::euclidean(0.0, 0.0), &Vec3::x(), 2.0).unwrap();
    assert!(s.contains(&Point::euclidean(100.0, 0.9)).unwrap().inside);
    assert!(!s.contains(&Point::euclidean(0.0, 1.1)).unwrap().inside);
    let chains = s.boundary_chains();
    assert_eq!(chains.len(), 2);
    assert!(chains.iter().all(|c| !c.closed && c.arcs.len() == 1));
    assert!(!s.is_compact());
}

#[test]
fn constructors_reject_wrong_spaces() {
    let e = ConvexRegion::strip(&Space::Hyperbolic.origin(), &Vec3::x(), 1.0);
    assert!(matches!(e, Err(GeomError::UnsupportedInSpace { .. })));
    let e = ConvexRegion::paraball(&Vec3::new(1.0, 0.0, 1.0), &Point::euclidean(0.0, 0.0));
    assert!(matches!(e, Err(GeomError::UnsupportedInSpace { .. })));
    assert!(matches!(ConvexRegion::disk(Space::Sphere.origin(), 2.0), Err(GeomError::OutOfRange { .. })));
}

#[test]
fn paraball_boundary_has_unit_curvature() {
    let p = ConvexRegion::paraball(&Vec3::new(0.0, 1.0, 1.0), &Space::Hyperbolic.origin()).unwrap();
    let chains = p.boundary_chains();
    assert_eq!(chains.len(), 1);
    assert_eq!(chains[0].arcs[0].cycle.curvature(), 1.0);
    assert_eq!(p.ideal_point_count(), 1);
}

#[test]
fn disk_chain_is_one_closed_arc() {
    for s in Space::ALL {
        let d = ConvexRegion::disk(pt(s, 0.2, 0.1), 0.7).unwrap();
        let c = d.boundary_chains();
        assert_eq!(c.len(), 1);
        assert!(c[0].closed);
        assert_eq!(c[0].arcs.len(), 1);
        assert!(c[0].vertices.is_empty());
        assert!(d.is_compact());
    }
}

#[test]
fn lens_chain_has_two_arcs_and_two_vertices() {
    for s in Space::ALL {
        let l = lens(s, 0.8, 0.6, 0.7);
        let c = l.boundary_chains();
        assert_eq!(c.len(), 1, "{s:?}");
        assert!(c[0].closed);
        assert_eq!(c[0].arcs.len(), 2);
        assert_eq!(c[0].vertices.len(), 2);
        assert!(c[0].closure_defect() <= 1e-9);
        for v in &c[0].vertices {
            assert!(v.outer_angle > 0.0 && v.outer_angle < PI);
        }
    }
}

#[test]
fn intersection_statuses() {
    let a = ConvexRegion::disk(Point::euclidean(0.0, 0.0), 1.0).unwrap();
    let far = ConvexRegion::disk(Point::euclidean(3.0, 0.0), 1.0).unwrap();
    assert!(matches!(intersect_regions(&a, &far).unwrap(), IntersectionResult::EmptyInterior));
    let small = ConvexRegion::disk(Point::euclidean(0.2, 0.0), 0.5).unwrap();
    match intersect_regions(&a, &small).unwrap() {
        IntersectionResult::CompactLens { region, chain } => {
            assert_eq!(chain.arcs.len(), 1);
            assert_eq!(region.redundant(), &[true, false]);
        }
        r => panic!("{r:?}"),
    }
    let up = ConvexRegion::half_plane(&Point::euclidean(0.0, -1.0), &Point::euclidean(1.0, -1.0)).unwrap();
    let down = ConvexRegion::half_plane(&Point::euclidean(1.0, 1.0), &Point::euclidean(0.0, 1.0)).unwrap();
    assert!(matches!(intersect_regions(&up, &down).unwrap(), IntersectionResult::Unbounded { .. }));
    // facing half-planes on one line
    let flip = ConvexRegion::half_plane(&Point::euclidean(1.0, -1.0), &Point::euclidean(0.0, -1.0)).unwrap();
    let r = intersect_regions(&up, &flip).unwrap();
    assert!(matches!(r, IntersectionResult::DegenerateChord { .. }), "{r:?}");
}

#[test]
fn membership_of_intersection_is_conjunction() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for s in Space::ALL {
        let a = ConvexRegion::disk(pt(s, -0.3, 0.0), 0.7).unwrap();
        let b = ConvexRegion::disk(pt(s, 0.3, 0.1), 0.6).unwrap();
        let ab = a.intersect(&b).unwrap();
        for _ in 0..10_000 {
            let p = pt(s, rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
            let both = a.contains(&p).unwrap().inside && b.contains(&p).unwrap().inside;
            assert_eq!(ab.contains(&p).unwrap().inside, both);
        }
    }
}

#[test]
fn placement_commutes_with_membership() {
    let s = Space::Hyperbolic;
    let r = lens(s, 0.8, 0.6, 0.7);
    let iso = Isometry::rotation(&pt(s, 0.4, -0.2), 1.1);
    let moved = r.placed(&iso).unwrap();
    for i in 0..100 {
        let p = pt(s, -1.0 + 0.02 * i as f64, 0.05 * (i % 7) as f64);
        let q = iso.apply(&p).unwrap();
        assert_abs_diff_eq!(moved.contains(&q).unwrap().margin, r.contains(&p).unwrap().margin, epsilon = 1e-10);
    }
}

#[test]
fn interval_and_probe_redundancy_agree() {
    let tri = ConvexRegion::polygon(&[
        Point::euclidean(0.0, 0.0),
        Point::euclidean(2.0, 0.0),
        Point::euclidean(0.0, 2.0),
    ])
    .unwrap();
    let cut = ConvexRegion::half_plane(&Point::euclidean(5.0, -1.0), &Point::euclidean(5.0, 1.0)).unwrap();
    let cut2 = ConvexRegion::half_plane(&Point::euclidean(-1.0, 1.0), &Point::euclidean(3.0, -1.0)).unwrap();
    let r = tri.intersect(&cut).unwrap().intersect(&cut2).unwrap();
    let flags = r.redundant().to_vec();
    assert_eq!(flags, vec![false, false, false, true, false]);
    for i in 0..flags.len() {
        assert_eq!(r.probe_redundant(i, config::REDUNDANCY_PROBES), flags[i], "constraint {i}");
    }
}

#[test]
fn gauss_bonnet_closes() {
    for s in Space::ALL {
        for reg in [lens(s, 0.8, 0.6, 0.7), ConvexRegion::disk(pt(s, 0.1, 0.2), 0.5).unwrap()] {
            let c = &reg.boundary_chains()[0];
            let a = area(&reg, 2000).unwrap();
            let total = c.total_outer_angle() + c.total_curvature() + s.curvature() * a;
            assert_abs_diff_eq!(total, 2.0 * PI, epsilon = 1e-4);
        }
    }
}

#[test]
fn support_and_radial_of_the_unit_disk() {
    let d = ConvexRegion::disk(Point::euclidean(0.0, 0.0), 1.0).unwrap();
    let o = Point::euclidean(0.0, 0.0);
    for k in 0..12 {
        let th = k as f64 * 0.5;
        let u = Vec3::new(th.cos(), th.sin(), 0.0);
        assert_abs_diff_eq!(support_function(&d, &o, &u).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(radial_function(&d, &o, &u).unwrap(), 1.0, epsilon = 1e-12);
    }
    assert_eq!(
        radial_function(&d, &Point::euclidean(3.0, 0.0), &Vec3::x()),
        Err(GeomError::BaseNotInterior)
    );
}

#[test]
fn radial_of_intersection_is_minimum() {
    for s in [Space::Euclidean, Space::Hyperbolic] {
        let a = ConvexRegion::disk(pt(s, -0.3, 0.0), 0.7).unwrap();
        let b = ConvexRegion::disk(pt(s, 0.3, 0.1), 0.6).unwrap();
        let ab = a.intersect(&b).unwrap();
        let base = *ab.witness();
        let (e1, e2) = tangent_frame(&base);
        for k in 0..360 {
            let th = k as f64 * PI / 180.0;
            let u = e1 * th.cos() + e2 * th.sin();
            let m = radial_function(&a, &base, &u).unwrap().min(radial_function(&b, &base, &u).unwrap());
            assert_abs_diff_eq!(radial_function(&ab, &base, &u).unwrap(), m, epsilon = 1e-12);
        }
    }
}

#[test]
fn unbounded_regions_refuse_metric_queries() {
    let h = ConvexRegion::half_plane(&Point::euclidean(0.0, 0.0), &Point::euclidean(1.0, 0.0)).unwrap();
    assert_eq!(diameter(&h), Err(GeomError::NonCompact));
    assert_eq!(hausdorff_distance(&h, &h), Err(GeomError::NonCompact));
    assert_eq!(radial_function(&h, &Point::euclidean(0.0, 1.0), &Vec3::y()).unwrap(), f64::INFINITY);
}

#[test]
fn hausdorff_examples() {
    let a = ConvexRegion::disk(Point::euclidean(0.0, 0.0), 1.0).unwrap();
    let b = ConvexRegion::disk(Point::euclidean(0.0, 0.0), 1.25).unwrap();
    assert_abs_diff_eq!(hausdorff_distance(&a, &b).unwrap(), 0.25, epsilon = 1e-12);
    assert_abs_diff_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0, epsilon = 1e-15);
    let l = lens(Space::Hyperbolic, 0.8, 0.6, 0.7);
    assert!(hausdorff_distance(&l, &l).unwrap() < 1e-12);
}

#[test]
fn diameters() {
    let d = ConvexRegion::disk(pt(Space::Hyperbolic, 0.3, 0.0), 0.9).unwrap();
    assert_abs_diff_eq!(diameter(&d).unwrap(), 1.8, epsilon = 1e-9);
    let sq = ConvexRegion::polygon(&[
        Point::euclidean(0.0, 0.0),
        Point::euclidean(1.0, 0.0),
        Point::euclidean(1.0, 1.0),
        Point::euclidean(0.0, 1.0),
    ])
    .unwrap();
    assert_abs_diff_eq!(diameter(&sq).unwrap(), 2f64.sqrt(), epsilon = 1e-12);
}

#[test]
fn support_of_symmetric_lens_along_axis() {
    // congruent disks centred at (±0.3, 0): the lens support along ±y is half its width
    let a = ConvexRegion::disk(Point::euclidean(-0.3, 0.0), 1.0).unwrap();
    let b = ConvexRegion::disk(Point::euclidean(0.3, 0.0), 1.0).unwrap();
    let l = a.intersect(&b).unwrap();
    let o = Point::euclidean(0.0, 0.0);
    let h = support_function(&l, &o, &Vec3::y()).unwrap();
    // dense sampling maximizer
    let mut best: f64 = 0.0;
    for chain in l.boundary_chains() {
        for arc in &chain.arcs {
            for p in crate::cycles::sample_arc(arc, 100_001).unwrap() {
                best = best.max(p.coords().y);
            }
        }
    }
    assert_abs_diff_eq!(h, best, epsilon = 1e-9);
    assert_abs_diff_eq!(h, (1.0f64 - 0.09).sqrt(), epsilon = 1e-12);
}

#[test]
fn ideal_boundary_of_line_bounded_regions() {
    let s = Space::Hyperbolic;
    let hp = ConvexRegion::half_plane(&klein(s, -0.5, 0.0).unwrap(), &klein(s, 0.5, 0.0).unwrap()).unwrap();
    let arcs = hp.ideal_boundary();
    assert_eq!(arcs.len(), 1);
    assert_abs_diff_eq!(arcs[0].end - arcs[0].start, PI, epsilon = 1e-12);
    let band = ConvexRegion::band(&klein(s, -0.5, 0.0).unwrap(), &klein(s, 0.5, 0.0).unwrap(), 0.4).unwrap();
    assert_eq!(band.ideal_boundary().len(), 2);
    assert_eq!(band.ideal_point_count(), 2);
}
