//! Cycles: curves of constant geodesic curvature.
//!
//! | space | kind | curvature |
//! |-------|------|-----------|
//! | `S²` | circle of radius `r ≤ π/2` (a great circle when `r = π/2`) | `cot r` |
//! | `E²` | circle of radius `r` | `1/r` |
//! | `E²` | line | `0` |
//! | `H²` | circle of radius `r` | `coth r` |
//! | `H²` | paracycle | `1` |
//! | `H²` | hypercycle at distance `l` from its base line | `tanh l` |
//! | `H²` | line | `0` |
//!
//! In `S²` and `H²` every cycle is a level set `⟨c, x⟩ = k` of the ambient
//! form. In the affine chart of `E²` only lines are, so a [`Cycle`] stores
//! kind-specific data and exposes the level set through
//! [`Cycle::level_set`] where it exists.
//!
//! [`Cycle::side_of`] is the signed distance to the cycle, positive on the
//! convex side. Every parameterization runs with the convex side on its left.

mod arc;
mod intersect;
mod params;

pub use arc::{estimate_curvature, sample_arc, sample_arc_clipped, ArcEnd, CycleArc};
pub use intersect::{intersect_cycles, Intersection};
pub use params::{make_cycle, model_point, CycleParams, ModelXY};

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{GeomError, Result};
use crate::space::model::Vec2;
use crate::space::{direction, rotate_tangent, tangent_frame, Isometry, Point, Space, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CycleKind {
    Circle { radius: f64 },
    Paracycle,
    Hypercycle { distance: f64 },
    Geodesic,
}

impl CycleKind {
    pub fn name(&self) -> &'static str {
        match self {
            CycleKind::Circle { .. } => "circle",
            CycleKind::Paracycle => "paracycle",
            CycleKind::Hypercycle { .. } => "hypercycle",
            CycleKind::Geodesic => "geodesic",
        }
    }
}

/// Which side of a cycle a half-domain keeps. For a geodesic both sides are
/// convex; `Convex` keeps the positive one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Convex,
    Concave,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub(crate) enum Shape {
    Circle { centre: Point, radius: f64 },
    /// `S²`/`H²`: unit spacelike normal. `E²`: `(nx, ny, −d)` for the line
    /// `nx·x + ny·y = d` with `nx² + ny² = 1`.
    Geodesic { normal: Vec3 },
    /// Null `ξ` with `ξ₃ = 1`; the cycle is `⟨ξ, x⟩ = −κ`.
    Paracycle { ideal: Vec3, kappa: f64 },
    /// The cycle is `⟨n, x⟩ = sinh l`; the base line is `⟨n, x⟩ = 0`.
    Hypercycle { normal: Vec3, distance: f64 },
}

/// Data of the canonical constant-speed parameterization `t ↦ point(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Frame {
    base: Vec3,
    e1: Vec3,
    e2: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cycle {
    shape: Shape,
    space: Space,
    frame: Frame,
}

impl Cycle {
    fn build(space: Space, shape: Shape) -> Cycle {
        let frame = Frame::of(space, &shape);
        Cycle { shape, space, frame }
    }

    /// Circle of radius `radius` about `centre`.
    pub fn circle(centre: Point, radius: f64) -> Result<Cycle> {
        let space = centre.space();
        let ok = match space {
            Space::Sphere => radius > 0.0 && radius <= FRAC_PI_2,
            _ => radius > 0.0 && radius.is_finite(),
        };
        if !ok {
            return Err(GeomError::OutOfRange { what: "circle radius", value: radius });
        }
        Ok(Cycle::build(space, Shape::Circle { centre, radius }))
    }

    /// The geodesic through `a` and `b`; its positive side is on the left of `a → b`.
    pub fn geodesic(a: &Point, b: &Point) -> Result<Cycle> {
        let dir = direction(a, b)?;
        Cycle::geodesic_through(a, &dir)
    }

    /// The geodesic through `p` with tangent `dir`; positive side on the left.
    pub fn geodesic_through(p: &Point, dir: &Vec3) -> Result<Cycle> {
        let space = p.space();
        let t = crate::space::normalize_tangent(space, &crate::space::project_tangent(p, dir))
            .ok_or(GeomError::DegenerateGeodesic)?;
        let j = rotate_tangent(p, &t);
        let normal = match space {
            Space::Euclidean => {
                let d = j.x * p.coords().x + j.y * p.coords().y;
                Vec3::new(j.x, j.y, -d)
            }
            _ => j,
        };
        Ok(Cycle::build(space, Shape::Geodesic { normal }))
    }

    /// Geodesic `{⟨n, x⟩ = 0}` (for `E²`, `n = (nx, ny, −d)`).
    pub fn geodesic_from_normal(space: Space, n: &Vec3) -> Result<Cycle> {
        let normal = normalize_normal(space, n)?;
        Ok(Cycle::build(space, Shape::Geodesic { normal }))
    }

    /// Paracycle with ideal centre `ideal` (any future null vector) through `through`.
    pub fn paracycle(ideal: &Vec3, through: &Point) -> Result<Cycle> {
        let space = through.space();
        if space != Space::Hyperbolic {
            return Err(GeomError::UnsupportedCycle { space, what: "paracycle" });
        }
        let xi = normalize_ideal(ideal)?;
        let kappa = -space.inner(&xi, through.coords());
        Ok(Cycle::build(space, Shape::Paracycle { ideal: xi, kappa }))
    }

    /// Paracycle centred at the ideal point with Collinear coordinates
    /// `(cos θ, sin θ)`, at signed distance `offset` from the model centre
    /// (positive when the centre lies inside the paraball).
    pub fn paracycle_at(space: Space, ideal_angle: f64, offset: f64) -> Result<Cycle> {
        if space != Space::Hyperbolic {
            return Err(GeomError::UnsupportedCycle { space, what: "paracycle" });
        }
        let xi = Vec3::new(ideal_angle.cos(), ideal_angle.sin(), 1.0);
        // −⟨ξ, o⟩ = 1 and side_of(o) = ln κ
        Ok(Cycle::build(space, Shape::Paracycle { ideal: xi, kappa: offset.exp() }))
    }

    /// Hypercycle at distance `l` from the geodesic with normal `n`, on the
    /// positive side of that geodesic.
    pub fn hypercycle(space: Space, n: &Vec3, l: f64) -> Result<Cycle> {
        if space != Space::Hyperbolic {
            return Err(GeomError::UnsupportedCycle { space, what: "hypercycle" });
        }
        if !(l > 0.0 && l.is_finite()) {
            return Err(GeomError::OutOfRange { what: "hypercycle distance", value: l });
        }
        let normal = normalize_normal(space, n)?;
        Ok(Cycle::build(space, Shape::Hypercycle { normal, distance: l }))
    }

    /// Hypercycle over the geodesic `a → b`, on its left, at distance `l`.
    pub fn hypercycle_over(a: &Point, b: &Point, l: f64) -> Result<Cycle> {
        let g = Cycle::geodesic(a, b)?;
        match g.shape {
            Shape::Geodesic { normal } => Cycle::hypercycle(a.space(), &normal, l),
            _ => unreachable!(),
        }
    }

    /// Classifies the level set `⟨c, x⟩ = k` of `S²` or `H²` by the causal
    /// type of `c`. A geodesic (`k = 0`) gets `⟨c, x⟩ ≥ 0` as its positive side.
    pub fn from_level_set(space: Space, c: &Vec3, k: f64) -> Result<Cycle> {
        let bad = |what| GeomError::UnsupportedCycle { space, what };
        let scale = c.norm();
        if !(scale > 0.0) || !k.is_finite() {
            return Err(bad("degenerate level set"));
        }
        let (c, k) = (c / scale, k / scale);
        let q = space.inner(&c, &c);
        match space {
            Space::Euclidean => Err(bad("E² circles are not level sets of the affine chart")),
            Space::Sphere => {
                // ⟨c, x⟩ = k with |c| = 1: circle about ±c
                let (a, k) = if k >= 0.0 { (c, k) } else { (-c, -k) };
                if k >= 1.0 {
                    return Err(bad("empty or degenerate level set"));
                }
                if k == 0.0 {
                    return Cycle::geodesic_from_normal(space, &c);
                }
                Cycle::circle(Point::raw(space, a), k.acos())
            }
            Space::Hyperbolic => {
                let eps = 1e-12;
                if q < -eps {
                    let s = (-q).sqrt();
                    let (a, k) = (c / s, k / s);
                    let (a, k) = if a.z > 0.0 { (a, k) } else { (-a, -k) };
                    // ⟨a, x⟩ = −cosh r
                    if !(-k > 1.0) {
                        return Err(bad("empty level set"));
                    }
                    Cycle::circle(Point::raw(space, a), (-k).acosh())
                } else if q <= eps {
                    let (xi, k) = if c.z > 0.0 { (c, k) } else { (-c, -k) };
                    if !(k < 0.0) {
                        return Err(bad("empty level set"));
                    }
                    let s = xi.z;
                    Ok(Cycle::build(space, Shape::Paracycle { ideal: xi / s, kappa: -k / s }))
                } else {
                    let s = q.sqrt();
                    let (n, k) = (c / s, k / s);
                    if k == 0.0 {
                        return Cycle::geodesic_from_normal(space, &n);
                    }
                    let (n, k) = if k > 0.0 { (n, k) } else { (-n, -k) };
                    Cycle::hypercycle(space, &n, k.asinh())
                }
            }
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn kind(&self) -> CycleKind {
        match self.shape {
            Shape::Circle { radius, .. } => CycleKind::Circle { radius },
            Shape::Geodesic { .. } => CycleKind::Geodesic,
            Shape::Paracycle { .. } => CycleKind::Paracycle,
            Shape::Hypercycle { distance, .. } => CycleKind::Hypercycle { distance },
        }
    }

    pub fn centre(&self) -> Option<Point> {
        match self.shape {
            Shape::Circle { centre, .. } => Some(centre),
            _ => None,
        }
    }

    /// Ideal centre of a paracycle (null, third coordinate 1).
    pub fn ideal_centre(&self) -> Option<Vec3> {
        match self.shape {
            Shape::Paracycle { ideal, .. } => Some(ideal),
            _ => None,
        }
    }

    /// Normal of the geodesic, or of the base line of a hypercycle.
    pub fn base_normal(&self) -> Option<Vec3> {
        match self.shape {
            Shape::Geodesic { normal } | Shape::Hypercycle { normal, .. } => Some(normal),
            _ => None,
        }
    }

    /// The base line of a hypercycle.
    pub fn base_line(&self) -> Option<Cycle> {
        match self.shape {
            Shape::Hypercycle { normal, .. } => Some(Cycle::build(self.space, Shape::Geodesic { normal })),
            _ => None,
        }
    }

    /// `(c, k)` with the cycle equal to `{⟨c, x⟩ = k}`, normalized so that
    /// `⟨c, c⟩ ∈ {−1, 0, 1}` and the convex (or positive) side is `⟨c, x⟩ ≥ k`.
    /// `None` for `E²` circles.
    pub fn level_set(&self) -> Option<(Vec3, f64)> {
        let s = self.space;
        match self.shape {
            Shape::Circle { centre, radius } => match s {
                Space::Sphere => Some((*centre.coords(), radius.cos())),
                Space::Hyperbolic => Some((*centre.coords(), -radius.cosh())),
                Space::Euclidean => None,
            },
            Shape::Geodesic { normal } => Some((normal, 0.0)),
            Shape::Paracycle { ideal, kappa } => Some((ideal, -kappa)),
            Shape::Hypercycle { normal, distance } => Some((-normal, -distance.sinh())),
        }
    }

    /// Geodesic curvature, positive towards the convex side.
    pub fn curvature(&self) -> f64 {
        curvature_of(self)
    }

    /// Signed distance from `p` to the cycle, positive on the convex side.
    pub fn side_of(&self, p: &Point) -> f64 {
        let s = self.space;
        let x = p.coords();
        match self.shape {
            Shape::Circle { centre, radius } => radius - crate::space::distance_unchecked(&centre, p),
            Shape::Geodesic { normal } => match s {
                Space::Sphere => normal.dot(x).clamp(-1.0, 1.0).asin(),
                Space::Euclidean => normal.dot(x),
                Space::Hyperbolic => s.inner(&normal, x).asinh(),
            },
            Shape::Paracycle { ideal, kappa } => (kappa / -s.inner(&ideal, x)).ln(),
            Shape::Hypercycle { normal, distance } => distance - s.inner(&normal, x).asinh(),
        }
    }

    /// Whether the parameterization is periodic (closed cycle).
    pub fn is_closed(&self) -> bool {
        matches!(self.shape, Shape::Circle { .. }) || (self.space == Space::Sphere)
    }

    /// Parameter period of a closed cycle.
    pub fn period(&self) -> Option<f64> {
        if self.is_closed() {
            Some(TAU)
        } else {
            None
        }
    }

    /// Intrinsic speed of the parameterization.
    pub fn speed(&self) -> f64 {
        match self.shape {
            Shape::Circle { radius, .. } => self.space.radius_scale(radius),
            Shape::Geodesic { .. } | Shape::Paracycle { .. } => 1.0,
            Shape::Hypercycle { distance, .. } => distance.cosh(),
        }
    }

    pub fn point_at(&self, t: f64) -> Point {
        let v = self.raw_point(t);
        Point::renormalized(self.space, v).unwrap_or_else(|_| Point::raw(self.space, v))
    }

    fn raw_point(&self, t: f64) -> Vec3 {
        let Frame { base, e1, e2 } = self.frame;
        match (self.space, self.shape) {
            (Space::Euclidean, Shape::Circle { radius, .. }) => base + (e1 * t.cos() + e2 * t.sin()) * radius,
            (Space::Sphere, Shape::Circle { radius, .. }) => {
                base * radius.cos() + (e1 * t.cos() + e2 * t.sin()) * radius.sin()
            }
            (Space::Hyperbolic, Shape::Circle { radius, .. }) => {
                base * radius.cosh() + (e1 * t.cos() + e2 * t.sin()) * radius.sinh()
            }
            (Space::Euclidean, Shape::Geodesic { .. }) => base + e1 * t,
            (Space::Sphere, Shape::Geodesic { .. }) => base * t.cos() + e1 * t.sin(),
            (Space::Hyperbolic, Shape::Geodesic { .. }) => base * t.cosh() + e1 * t.sinh(),
            (_, Shape::Hypercycle { normal, distance }) => {
                (base * t.cosh() + e1 * t.sinh()) * distance.cosh() + normal * distance.sinh()
            }
            (_, Shape::Paracycle { .. }) => base + e1 * t + e2 * (t * t / 2.0),
        }
    }

    /// Unit tangent at parameter `t` (direction of increasing `t`).
    pub fn tangent_at(&self, t: f64) -> Vec3 {
        let Frame { base, e1, e2 } = self.frame;
        let raw = match (self.space, self.shape) {
            (Space::Euclidean, Shape::Circle { .. }) => -e1 * t.sin() + e2 * t.cos(),
            (Space::Sphere | Space::Hyperbolic, Shape::Circle { .. }) => -e1 * t.sin() + e2 * t.cos(),
            (Space::Euclidean, Shape::Geodesic { .. }) => e1,
            (Space::Sphere, Shape::Geodesic { .. }) => -base * t.sin() + e1 * t.cos(),
            (Space::Hyperbolic, Shape::Geodesic { .. }) => base * t.sinh() + e1 * t.cosh(),
            (_, Shape::Hypercycle { .. }) => base * t.sinh() + e1 * t.cosh(),
            (_, Shape::Paracycle { .. }) => e1 + e2 * t,
        };
        let p = self.point_at(t);
        let raw = crate::space::project_tangent(&p, &raw);
        crate::space::normalize_tangent(self.space, &raw).unwrap_or(raw)
    }

    /// Parameter of a point on (or near) the cycle. For closed cycles the
    /// value lies in `[0, 2π)`.
    pub fn param_of(&self, p: &Point) -> f64 {
        let s = self.space;
        let Frame { base, e1, e2 } = self.frame;
        let x = p.coords();
        match self.shape {
            Shape::Circle { .. } => {
                let (a, b) = match s {
                    Space::Euclidean => ((x - base).dot(&e1), (x - base).dot(&e2)),
                    _ => (s.inner(x, &e1), s.inner(x, &e2)),
                };
                b.atan2(a).rem_euclid(TAU)
            }
            Shape::Geodesic { .. } => match s {
                Space::Euclidean => (x - base).dot(&e1),
                Space::Sphere => x.dot(&e1).atan2(x.dot(&base)).rem_euclid(TAU),
                Space::Hyperbolic => s.inner(x, &e1).asinh(),
            },
            Shape::Hypercycle { distance, .. } => (s.inner(x, &e1) / distance.cosh()).asinh(),
            Shape::Paracycle { .. } => s.inner(x, &e1),
        }
    }

    /// End of the cycle as `t → ±∞`: Collinear-model boundary coordinates
    /// in `H²`, a unit direction in `E²`. `None` for closed cycles.
    pub fn ideal_end(&self, sign: f64) -> Option<Vec2> {
        if self.is_closed() {
            return None;
        }
        let Frame { base, e1, .. } = self.frame;
        match (self.space, self.shape) {
            (Space::Euclidean, _) => Some(Vec2::new(e1.x, e1.y) * sign),
            (_, Shape::Paracycle { ideal, .. }) => Some(Vec2::new(ideal.x, ideal.y)),
            _ => {
                let v = base + e1 * sign;
                Some(Vec2::new(v.x / v.z, v.y / v.z))
            }
        }
    }

    /// Image under a congruence.
    pub fn transformed(&self, iso: &Isometry) -> Result<Cycle> {
        self.space.ensure_same(iso.space())?;
        let s = self.space;
        let shape = match self.shape {
            Shape::Circle { centre, radius } => Shape::Circle { centre: iso.apply(&centre)?, radius },
            Shape::Geodesic { normal } => Shape::Geodesic { normal: normalize_normal(s, &iso.apply_normal(&normal))? },
            Shape::Hypercycle { normal, distance } => {
                Shape::Hypercycle { normal: normalize_normal(s, &iso.apply_normal(&normal))?, distance }
            }
            Shape::Paracycle { ideal, kappa } => {
                let m = iso.matrix() * ideal;
                Shape::Paracycle { ideal: m / m.z, kappa: kappa / m.z }
            }
        };
        Ok(Cycle::build(s, shape))
    }

    /// Whether two cycles are the same point set.
    pub fn coincides(&self, other: &Cycle) -> bool {
        const EPS: f64 = 1e-10;
        if self.space != other.space {
            return false;
        }
        match (self.shape, other.shape) {
            (Shape::Circle { centre: a, radius: r }, Shape::Circle { centre: b, radius: s }) => {
                (r - s).abs() <= EPS * r.max(1.0) && crate::space::distance_unchecked(&a, &b) <= EPS
            }
            (Shape::Geodesic { normal: n }, Shape::Geodesic { normal: m }) => {
                (n - m).amax() <= EPS || (n + m).amax() <= EPS
            }
            (Shape::Hypercycle { normal: n, distance: l }, Shape::Hypercycle { normal: m, distance: k }) => {
                (n - m).amax() <= EPS && (l - k).abs() <= EPS
            }
            (Shape::Paracycle { ideal: x, kappa: a }, Shape::Paracycle { ideal: y, kappa: b }) => {
                (x - y).amax() <= EPS && (a - b).abs() <= EPS * a.max(1.0)
            }
            _ => {
                // a great circle is also a circle of radius π/2
                if self.space == Space::Sphere {
                    if let (Some((c1, k1)), Some((c2, k2))) = (self.level_set(), other.level_set()) {
                        return k1.abs() <= EPS
                            && k2.abs() <= EPS
                            && ((c1 - c2).amax() <= EPS || (c1 + c2).amax() <= EPS);
                    }
                }
                false
            }
        }
    }

    /// Residual of the defining equation at `p`, in distance units.
    pub fn residual(&self, p: &Point) -> f64 {
        self.side_of(p).abs()
    }
}

/// Geodesic curvature of a cycle.
pub fn curvature_of(c: &Cycle) -> f64 {
    match (c.space, c.shape) {
        (_, Shape::Geodesic { .. }) => 0.0,
        (Space::Sphere, Shape::Circle { radius, .. }) => {
            if radius == FRAC_PI_2 {
                0.0
            } else {
                1.0 / radius.tan()
            }
        }
        (Space::Euclidean, Shape::Circle { radius, .. }) => 1.0 / radius,
        (Space::Hyperbolic, Shape::Circle { radius, .. }) => 1.0 / radius.tanh(),
        (_, Shape::Paracycle { .. }) => 1.0,
        (_, Shape::Hypercycle { distance, .. }) => distance.tanh(),
    }
}

fn normalize_normal(space: Space, n: &Vec3) -> Result<Vec3> {
    let bad = GeomError::DegenerateGeodesic;
    let out = match space {
        Space::Euclidean => {
            let h = n.x.hypot(n.y);
            if !(h > 0.0) {
                return Err(bad);
            }
            n / h
        }
        _ => {
            let q = space.inner(n, n);
            if !(q > 0.0) {
                return Err(bad);
            }
            n / q.sqrt()
        }
    };
    if out.iter().all(|c| c.is_finite()) {
        Ok(out)
    } else {
        Err(bad)
    }
}

fn normalize_ideal(xi: &Vec3) -> Result<Vec3> {
    let s = Space::Hyperbolic;
    if !(xi.z > 0.0) || s.inner(xi, xi).abs() > 1e-9 * xi.norm_squared() {
        return Err(GeomError::UnsupportedCycle { space: s, what: "ideal centre must be a future null vector" });
    }
    let v = xi / xi.z;
    // restore exact nullity
    let h = v.x.hypot(v.y);
    Ok(Vec3::new(v.x / h, v.y / h, 1.0))
}

impl Frame {
    fn of(space: Space, shape: &Shape) -> Frame {
        let o = space.origin();
        match *shape {
            Shape::Circle { centre, .. } => {
                let (e1, e2) = tangent_frame(&centre);
                Frame { base: *centre.coords(), e1, e2 }
            }
            Shape::Geodesic { normal } | Shape::Hypercycle { normal, .. } => {
                let base = closest_on_line(space, &normal, &o);
                let bp = Point::raw(space, base);
                let n_t = match space {
                    Space::Euclidean => Vec3::new(normal.x, normal.y, 0.0),
                    _ => normal,
                };
                // geodesic: w = −J n (positive side on the left);
                // hypercycle: w = J n (base side on the left)
                let w = rotate_tangent(&bp, &n_t);
                let w = if matches!(shape, Shape::Geodesic { .. }) { -w } else { w };
                Frame { base, e1: w, e2: n_t }
            }
            Shape::Paracycle { ideal, kappa } => {
                // base on the ray from the origin towards ξ, at signed distance ln κ
                let t = -kappa.ln();
                let dir = Vec3::new(ideal.x, ideal.y, 0.0);
                let bp = crate::space::exp(&o, &(dir * t));
                let b = *bp.coords();
                let xh = ideal / kappa;
                let xh = xh / -space.inner(&xh, &b);
                let m = xh - b;
                let e = -rotate_tangent(&bp, &m);
                Frame { base: b, e1: e, e2: xh }
            }
        }
    }
}

/// Point of the geodesic `{⟨n, x⟩ = 0}` closest to `p`.
fn closest_on_line(space: Space, n: &Vec3, p: &Point) -> Vec3 {
    let x = p.coords();
    match space {
        Space::Euclidean => {
            let s = n.dot(x);
            Vec3::new(x.x - n.x * s, x.y - n.y * s, 1.0)
        }
        Space::Sphere => {
            let v = x - n * n.dot(x);
            let len = v.norm();
            if len > 1e-12 {
                v / len
            } else {
                // the line is the polar of p; any point of it will do
                let t = if n.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
                let v = t - n * n.dot(&t);
                v / v.norm()
            }
        }
        Space::Hyperbolic => {
            let v = x - n * space.inner(n, x);
            v / (-space.inner(&v, &v)).sqrt()
        }
    }
}

#[cfg(test)]
mod tests;
