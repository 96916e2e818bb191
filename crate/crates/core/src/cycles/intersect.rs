use super::{Cycle, Shape};
use crate::config;
use crate::error::Result;
use crate::space::{distance_unchecked, project_tangent, tangent_frame, Point, Space, Vec3};

/// Common points of two cycles.
#[derive(Debug, Clone, PartialEq)]
pub enum Intersection {
    /// Zero, one or two transversal crossings.
    Points(Vec<Point>),
    /// The cycles touch at one point (crossings closer than twice the
    /// tangency window are merged).
    Tangent(Point),
    /// Same point set.
    Coincident,
}

impl Intersection {
    pub fn points(&self) -> Vec<Point> {
        match self {
            Intersection::Points(v) => v.clone(),
            Intersection::Tangent(p) => vec![*p],
            Intersection::Coincident => Vec::new(),
        }
    }

    pub fn count(&self) -> usize {
        match self {
            Intersection::Points(v) => v.len(),
            Intersection::Tangent(_) => 1,
            Intersection::Coincident => 0,
        }
    }
}

pub fn intersect_cycles(a: &Cycle, b: &Cycle) -> Result<Intersection> {
    a.space.ensure_same(b.space)?;
    if a.coincides(b) {
        return Ok(Intersection::Coincident);
    }
    let raw = match a.space {
        Space::Euclidean => planar(a, b),
        _ => curved(a, b),
    };
    let Some(raw) = raw else {
        return Ok(Intersection::Coincident);
    };
    Ok(finish(a, b, raw))
}

/// Candidate points, each marked when it came from a (near-)zero discriminant.
struct Raw {
    points: Vec<Vec3>,
    touching: bool,
}

fn finish(a: &Cycle, b: &Cycle, raw: Raw) -> Intersection {
    let space = a.space;
    let pts: Vec<Point> = raw
        .points
        .into_iter()
        .filter_map(|v| Point::renormalized(space, v).ok())
        .map(|p| polish(a, b, p))
        .filter(|p| a.residual(p) <= 1e-7 && b.residual(p) <= 1e-7)
        .collect();
    if raw.touching {
        return match pts.first() {
            Some(p) => Intersection::Tangent(*p),
            None => Intersection::Points(Vec::new()),
        };
    }
    if pts.len() == 2 && distance_unchecked(&pts[0], &pts[1]) < 2.0 * config::TANGENCY_WINDOW {
        let m = crate::space::geodesic_point(&pts[0], &pts[1], 0.5).unwrap_or(pts[0]);
        return Intersection::Tangent(m);
    }
    Intersection::Points(pts)
}

/// Newton steps on the pair of signed distances in a tangent chart.
fn polish(a: &Cycle, b: &Cycle, mut p: Point) -> Point {
    for _ in 0..3 {
        let r = [a.side_of(&p), b.side_of(&p)];
        if r[0].abs().max(r[1].abs()) < 1e-15 {
            break;
        }
        let (e1, e2) = tangent_frame(&p);
        let h = 1e-7;
        let grad = |c: &Cycle, e: &Vec3| {
            let plus = crate::space::exp(&p, &(e * h));
            let minus = crate::space::exp(&p, &(e * -h));
            (c.side_of(&plus) - c.side_of(&minus)) / (2.0 * h)
        };
        let j = nalgebra::Matrix2::new(grad(a, &e1), grad(a, &e2), grad(b, &e1), grad(b, &e2));
        if j.determinant().abs() < 1e-6 {
            break;
        }
        let Some(inv) = j.try_inverse() else { break };
        let d = inv * nalgebra::Vector2::new(-r[0], -r[1]);
        let q = crate::space::exp(&p, &(e1 * d.x + e2 * d.y));
        if a.residual(&q).max(b.residual(&q)) < r[0].abs().max(r[1].abs()) {
            p = q;
        } else {
            break;
        }
    }
    p
}

/// Half-chord (in parameter units of the line) below which two roots merge.
fn touching(disc: f64, lead: f64, speed: f64) -> bool {
    disc.abs().sqrt() / lead.abs() * speed < config::TANGENCY_WINDOW
}

fn curved(a: &Cycle, b: &Cycle) -> Option<Raw> {
    let space = a.space;
    let g = space.gram();
    let (c1, k1) = a.level_set().expect("curved level set");
    let (c2, k2) = b.level_set().expect("curved level set");
    // Euclidean rows of the linear system ⟨cᵢ, x⟩ = kᵢ
    let (mut r1, mut k1) = (g * c1, k1);
    let (mut r2, mut k2) = (g * c2, k2);
    let (n1, n2) = (r1.norm(), r2.norm());
    r1 /= n1;
    k1 /= n1;
    r2 /= n2;
    k2 /= n2;
    let w = r1.cross(&r2);
    let sigma = if space == Space::Sphere { 1.0 } else { -1.0 };
    if w.norm() < 1e-13 {
        // parallel planes: same or disjoint level sets
        let same = if r1.dot(&r2) > 0.0 { (k1 - k2).abs() } else { (k1 + k2).abs() };
        return if same < 1e-12 { None } else { Some(Raw { points: Vec::new(), touching: false }) };
    }
    let w = w / w.norm();
    // minimal-norm particular solution in span(r1, r2)
    let d = r1.dot(&r2);
    let det = 1.0 - d * d;
    let alpha = (k1 - d * k2) / det;
    let beta = (k2 - d * k1) / det;
    let x0 = r1 * alpha + r2 * beta;
    let qa = space.inner(&w, &w);
    let qb = space.inner(&x0, &w);
    let qc = space.inner(&x0, &x0) - sigma;
    let keep = |v: &Vec3| space != Space::Hyperbolic || v.z > 0.0;
    if qa.abs() < 1e-12 {
        // null direction: at most one finite root
        if qb.abs() < 1e-14 {
            return Some(Raw { points: Vec::new(), touching: false });
        }
        let t = -qc / (2.0 * qb);
        let v = x0 + w * t;
        let points = if keep(&v) && v.norm() < 1e12 { vec![v] } else { Vec::new() };
        return Some(Raw { points, touching: false });
    }
    let disc = qb * qb - qa * qc;
    let tmid = -qb / qa;
    let vmid = x0 + w * tmid;
    let speed = {
        // intrinsic length of the unit line direction near the roots
        match Point::renormalized(space, vmid).or_else(|_| Point::project(space, vmid)) {
            Ok(p) => crate::space::tangent_norm(space, &project_tangent(&p, &w)).max(1e-300),
            Err(_) => 1.0,
        }
    };
    // below the rounding floor of the discriminant a near miss is a touch
    let grazing = disc < 0.0
        && Point::project(space, vmid).map(|p| a.residual(&p) + b.residual(&p) <= 1e-13).unwrap_or(false);
    if touching(disc, qa, speed) || grazing {
        let points = if keep(&vmid) { vec![vmid] } else { Vec::new() };
        return Some(Raw { points, touching: true });
    }
    if disc < 0.0 {
        return Some(Raw { points: Vec::new(), touching: false });
    }
    let s = disc.sqrt();
    // numerically stable pair of roots
    let q = -(qb + qb.signum() * s);
    let (t1, t2) = if q != 0.0 { (q / qa, qc / q) } else { (s / qa, -s / qa) };
    let points = [x0 + w * t1, x0 + w * t2].into_iter().filter(|v| keep(v)).collect();
    Some(Raw { points, touching: false })
}

fn planar(a: &Cycle, b: &Cycle) -> Option<Raw> {
    match (a.shape, b.shape) {
        (Shape::Geodesic { normal: n }, Shape::Geodesic { normal: m }) => {
            let det = n.x * m.y - n.y * m.x;
            if det.abs() < 1e-14 {
                let same = if n.x * m.x + n.y * m.y > 0.0 { (n.z - m.z).abs() } else { (n.z + m.z).abs() };
                return if same < 1e-12 { None } else { Some(Raw { points: Vec::new(), touching: false }) };
            }
            let (d1, d2) = (-n.z, -m.z);
            let x = (d1 * m.y - d2 * n.y) / det;
            let y = (n.x * d2 - m.x * d1) / det;
            Some(Raw { points: vec![Vec3::new(x, y, 1.0)], touching: false })
        }
        (Shape::Geodesic { normal }, Shape::Circle { centre, radius })
        | (Shape::Circle { centre, radius }, Shape::Geodesic { normal }) => {
            Some(line_circle(&normal, centre.coords(), radius))
        }
        (Shape::Circle { centre: c1, radius: r1 }, Shape::Circle { centre: c2, radius: r2 }) => {
            let (p, q) = (c1.coords(), c2.coords());
            let dx = q.x - p.x;
            let dy = q.y - p.y;
            let d = dx.hypot(dy);
            if d < 1e-15 {
                return if (r1 - r2).abs() < 1e-12 { None } else { Some(Raw { points: Vec::new(), touching: false }) };
            }
            // radical line: n·x = s with n the unit vector c1 → c2
            let (nx, ny) = (dx / d, dy / d);
            let s = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d) + nx * p.x + ny * p.y;
            Some(line_circle(&Vec3::new(nx, ny, -s), p, r1))
        }
        _ => unreachable!("E² carries only circles and lines"),
    }
}

fn line_circle(n: &Vec3, c: &Vec3, r: f64) -> Raw {
    let h = n.x * c.x + n.y * c.y + n.z;
    let foot = Vec3::new(c.x - n.x * h, c.y - n.y * h, 1.0);
    let disc = r * r - h * h;
    if disc.abs().sqrt() < config::TANGENCY_WINDOW || (disc < 0.0 && (h.abs() - r) < 1e-15) {
        return Raw { points: vec![foot], touching: true };
    }
    if disc < 0.0 {
        return Raw { points: Vec::new(), touching: false };
    }
    let s = disc.sqrt();
    // tangent direction J n
    let t = Vec3::new(-n.y, n.x, 0.0);
    Raw { points: vec![foot - t * s, foot + t * s], touching: false }
}
