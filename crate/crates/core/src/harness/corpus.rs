//! A fixed-seed corpus of compact regions covering every classification.

use rand::Rng;
use std::f64::consts::{PI, TAU};

use super::experiments::lemma19::perturbed_quadrangle;
use super::{trial_rng, Placement};
use crate::error::{GeomError, Result};
use crate::regions::{ConvexRegion, Half};
use crate::cycles::{Cycle, Side};
use crate::space::{exp, tangent_frame, Isometry, Point, Space, Vec3};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub region: ConvexRegion,
}

const SPACES: [Space; 3] = [Space::Sphere, Space::Euclidean, Space::Hyperbolic];

/// Point at polar coordinates `(r, t)` about the origin, `r` intrinsic.
fn polar(space: Space, r: f64, t: f64) -> Point {
    let o = space.origin();
    let (e1, e2) = tangent_frame(&o);
    exp(&o, &((e1 * t.cos() + e2 * t.sin()) * r))
}

fn polygon_at(space: Space, radii: &[f64], angles: &[f64]) -> Result<ConvexRegion> {
    let pts: Vec<Point> = radii.iter().zip(angles).map(|(&r, &t)| polar(space, r, t)).collect();
    ConvexRegion::polygon(&pts)
}

fn disk_at(space: Space, r: f64, t: f64, radius: f64) -> Result<ConvexRegion> {
    ConvexRegion::disk(polar(space, r, t), radius)
}

/// Typical intrinsic scale of a shape in `space`.
fn scale(space: Space) -> f64 {
    if space == Space::Sphere {
        0.6
    } else {
        1.0
    }
}

type Maker = fn(Space, &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion>;

fn disk(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    disk_at(space, 0.0, 0.0, rng.gen_range(0.3..1.0) * scale(space))
}

fn lens(space: Space, rng: &mut rand_chacha::ChaCha8Rng, ratio: f64) -> Result<ConvexRegion> {
    let r = rng.gen_range(0.5..1.0) * scale(space);
    let d = rng.gen_range(0.3..1.5) * r;
    disk_at(space, d / 2.0, 0.0, r)?.intersect(&disk_at(space, d / 2.0, PI, r * ratio)?)
}

fn congruent_lens(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    lens(space, rng, 1.0)
}

fn incongruent_lens(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    let ratio = rng.gen_range(1.1..1.4);
    lens(space, rng, ratio)
}

fn triangle(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    let s = scale(space);
    let mut a = [rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)];
    a.sort_by(f64::total_cmp);
    if a[1] - a[0] < 0.3 || a[2] - a[1] < 0.3 || TAU - (a[2] - a[0]) < 0.3 {
        return Err(GeomError::EmptyInterior);
    }
    polygon_at(space, &[rng.gen_range(0.3..0.8) * s, rng.gen_range(0.3..0.8) * s, rng.gen_range(0.3..0.8) * s], &a)
}

fn isosceles(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    let s = scale(space);
    let half = rng.gen_range(0.5..1.3);
    let r = rng.gen_range(0.3..0.8) * s;
    let apex = rng.gen_range(0.2..0.9) * s;
    polygon_at(space, &[apex, r, r], &[0.0, PI - half, PI + half])
}

fn regular(space: Space, n: usize, r: f64) -> Result<ConvexRegion> {
    let angles: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
    polygon_at(space, &vec![r; n], &angles)
}

fn equilateral(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    regular(space, 3, rng.gen_range(0.3..0.8) * scale(space))
}

fn regular_ngon(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    regular(space, rng.gen_range(4..9), rng.gen_range(0.3..0.8) * scale(space))
}

fn cyclic_quad(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    let mut a: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..TAU)).collect();
    a.sort_by(f64::total_cmp);
    if a.windows(2).any(|w| w[1] - w[0] < 0.3) || TAU - (a[3] - a[0]) < 0.3 {
        return Err(GeomError::EmptyInterior);
    }
    polygon_at(space, &[0.6 * scale(space); 4], &a)
}

/// Quadrangle `p, q, −p, −q`: centrally symmetric, a rhombus or rectangle when
/// the diagonals are equal or orthogonal.
fn central_quad(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    let s = scale(space);
    let (r1, r2) = match rng.gen_range(0..3) {
        0 => (0.6 * s, 0.6 * s),
        _ => (rng.gen_range(0.3..0.8) * s, rng.gen_range(0.3..0.8) * s),
    };
    let t = if rng.gen_bool(0.3) { PI / 2.0 } else { rng.gen_range(0.5..2.6) };
    polygon_at(space, &[r1, r2, r1, r2], &[0.0, t, PI, PI + t])
}

fn circle_half_plane(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    let r = rng.gen_range(0.4..1.0) * scale(space);
    let d = rng.gen_range(-0.7..0.7) * r;
    let t = rng.gen_range(0.0..TAU);
    let p = polar(space, d, t);
    let o = space.origin();
    let (e1, e2) = tangent_frame(&o);
    // the line through p perpendicular to the ray at angle t
    let radial = e1 * t.cos() + e2 * t.sin();
    let along = Isometry::translation(&o, &radial, d)?.apply_vector(&(e1 * -t.sin() + e2 * t.cos()));
    let line = Cycle::geodesic_through(&p, &along)?;
    ConvexRegion::disk(o, r)?.intersect(&ConvexRegion::from_halves(space, vec![Half::convex(line)])?)
}

fn e2_only(space: Space) -> Result<()> {
    if space == Space::Euclidean {
        Ok(())
    } else {
        Err(GeomError::UnsupportedInSpace { space, what: "strip" })
    }
}

/// Strip cut by two more half-planes: a parallelogram or trapezoid.
fn clipped_strip(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    e2_only(space)?;
    let o = Point::euclidean(0.0, 0.0);
    let t = rng.gen_range(0.0..PI);
    let strip = ConvexRegion::strip(&o, &Vec3::new(t.cos(), t.sin(), 0.0), rng.gen_range(0.5..2.0))?;
    let u = t + rng.gen_range(0.4..2.7);
    let other = if rng.gen_bool(0.5) {
        ConvexRegion::strip(&Point::euclidean(0.0, 0.0), &Vec3::new(u.cos(), u.sin(), 0.0), rng.gen_range(0.5..2.0))?
    } else {
        let v = u + rng.gen_range(-0.4..0.4);
        let (a, b) = (Point::euclidean(-u.sin(), u.cos()), Point::euclidean(v.sin(), -v.cos()));
        let h1 = ConvexRegion::half_plane(&a, &Point::euclidean(a.coords().x + u.cos(), a.coords().y + u.sin()))?;
        let h2 = ConvexRegion::half_plane(&b, &Point::euclidean(b.coords().x - v.cos(), b.coords().y - v.sin()))?;
        h1.intersect(&h2)?
    };
    strip.intersect(&other)
}

fn circle_strip(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    e2_only(space)?;
    let r = rng.gen_range(0.5..1.5);
    let t = rng.gen_range(0.0..PI);
    let off = rng.gen_range(-0.5..0.5) * r;
    let p = Point::euclidean(-off * t.sin(), off * t.cos());
    let strip = ConvexRegion::strip(&p, &Vec3::new(t.cos(), t.sin(), 0.0), rng.gen_range(0.3..1.2) * r)?;
    ConvexRegion::disk(Point::euclidean(0.0, 0.0), r)?.intersect(&strip)
}

fn quadrangle(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    if space != Space::Hyperbolic {
        return Err(GeomError::UnsupportedInSpace { space, what: "parallel-line quadrangle" });
    }
    perturbed_quadrangle(rng.gen_range(0.02..0.1), rng)
}

fn paraball_disk(space: Space, rng: &mut rand_chacha::ChaCha8Rng) -> Result<ConvexRegion> {
    if space != Space::Hyperbolic {
        return Err(GeomError::UnsupportedInSpace { space, what: "paraball" });
    }
    let p = ConvexRegion::from_halves(space, vec![Half { cycle: Cycle::paracycle_at(space, 0.0, rng.gen_range(-0.5..0.5))?, side: Side::Convex }])?;
    p.intersect(&disk_at(space, 0.0, 0.0, rng.gen_range(0.5..1.2))?)
}

const KINDS: [(&str, usize, Maker); 14] = [
    ("disk", 10, disk),
    ("congruent_lens", 25, congruent_lens),
    ("incongruent_lens", 25, incongruent_lens),
    ("triangle", 25, triangle),
    ("isosceles", 15, isosceles),
    ("equilateral", 5, equilateral),
    ("cyclic_quad", 15, cyclic_quad),
    ("regular_ngon", 10, regular_ngon),
    ("central_quad", 15, central_quad),
    ("circle_half_plane", 15, circle_half_plane),
    ("clipped_strip", 20, clipped_strip),
    ("circle_strip", 15, circle_strip),
    ("quadrangle", 15, quadrangle),
    ("paraball_disk", 10, paraball_disk),
];

/// Compact regions in all three spaces at random placements. Kinds limited
/// to one space are drawn there only.
pub fn corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut stream = 0usize;
    for (name, count, make) in KINDS {
        for space in SPACES {
            let mut made = 0;
            let mut attempts = 0;
            while made < count && attempts < 20 * count {
                attempts += 1;
                let mut rng = trial_rng(seed, stream);
                stream += 1;
                let region = match make(space, &mut rng) {
                    Ok(r) => r,
                    Err(GeomError::UnsupportedInSpace { .. }) => break,
                    Err(_) => continue,
                };
                if !region.is_compact() || region.redundant().iter().any(|&r| r) {
                    continue;
                }
                let placement = Placement::random(&mut rng, 0.5 * scale(space));
                let region = region.placed(&placement.isometry(space)?)?;
                out.push(CorpusEntry { name: format!("{name}/{}/{made}", space.label()), region });
                made += 1;
            }
        }
    }
    Ok(out)
}
