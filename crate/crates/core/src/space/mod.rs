//! Points, geodesics and angles in the three constant-curvature planes.
//!
//! All three geometries live in `R³`:
//!
//! * the sphere `S²` is the unit sphere with the Euclidean form,
//! * the Euclidean plane `E²` is the affine chart `x₃ = 1`,
//! * the hyperbolic plane `H²` is the upper sheet of `x₁² + x₂² − x₃² = −1`.
//!
//! With this choice every congruence is a 3×3 matrix and the three spaces
//! share one isometry algebra (see [`isometry`]).

pub mod isometry;
pub mod model;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::{GeomError, Result};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

pub use isometry::{CongruenceSpec, Isometry, IsometryKind};
pub use model::{ModelKind, ModelPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    #[serde(rename = "S2")]
    Sphere,
    #[serde(rename = "E2")]
    Euclidean,
    #[serde(rename = "H2")]
    Hyperbolic,
}

impl Space {
    pub const ALL: [Space; 3] = [Space::Sphere, Space::Euclidean, Space::Hyperbolic];

    /// Gram matrix of the ambient form. For `E²` only the first two
    /// coordinates carry the metric; the third is the affine coordinate.
    pub fn gram(self) -> Mat3 {
        match self {
            Space::Sphere => Mat3::identity(),
            Space::Euclidean => Mat3::from_diagonal(&Vec3::new(1.0, 1.0, 0.0)),
            Space::Hyperbolic => Mat3::from_diagonal(&Vec3::new(1.0, 1.0, -1.0)),
        }
    }

    #[inline]
    pub fn inner(self, a: &Vec3, b: &Vec3) -> f64 {
        match self {
            Space::Sphere => a.dot(b),
            Space::Euclidean => a.x * b.x + a.y * b.y,
            Space::Hyperbolic => a.x * b.x + a.y * b.y - a.z * b.z,
        }
    }

    /// Gaussian curvature.
    pub fn curvature(self) -> f64 {
        match self {
            Space::Sphere => 1.0,
            Space::Euclidean => 0.0,
            Space::Hyperbolic => -1.0,
        }
    }

    /// The point mapped to the centre of both models. For the sphere this
    /// is the south pole.
    pub fn origin(self) -> Point {
        let v = match self {
            Space::Sphere => Vec3::new(0.0, 0.0, -1.0),
            Space::Euclidean | Space::Hyperbolic => Vec3::new(0.0, 0.0, 1.0),
        };
        Point { v, space: self }
    }

    pub fn label(self) -> &'static str {
        match self {
            Space::Sphere => "S2",
            Space::Euclidean => "E2",
            Space::Hyperbolic => "H2",
        }
    }

    /// `sin`, identity or `sinh`: the circumference of a circle of radius
    /// `r` is `2π · radius_scale(r)`.
    pub fn radius_scale(self, r: f64) -> f64 {
        match self {
            Space::Sphere => r.sin(),
            Space::Euclidean => r,
            Space::Hyperbolic => r.sinh(),
        }
    }

    pub fn ensure_same(self, other: Space) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(GeomError::SpaceMismatch(self, other))
        }
    }
}

/// A point of `S²`, `E²` or `H²` in embedding coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    v: Vec3,
    space: Space,
}

impl Point {
    /// Validates that `v` lies on the model quadric.
    pub fn new(space: Space, v: Vec3) -> Result<Point> {
        if !v.iter().all(|c| c.is_finite()) {
            return Err(GeomError::InvalidPoint(format!("non-finite coordinates {v:?}")));
        }
        let ok = match space {
            Space::Sphere => (v.norm_squared() - 1.0).abs() <= config::POINT_ON_QUADRIC,
            Space::Euclidean => v.z == 1.0,
            Space::Hyperbolic => {
                let q = space.inner(&v, &v);
                v.z > 0.0 && (q + 1.0).abs() <= config::POINT_ON_QUADRIC * v.norm_squared().max(1.0)
            }
        };
        if ok {
            Ok(Point { v, space })
        } else {
            Err(GeomError::InvalidPoint(format!("{v:?} is not on the {} quadric", space.label())))
        }
    }

    /// Projects an ambient vector onto the quadric (central projection for
    /// the curved spaces, dehomogenization for `E²`).
    pub fn project(space: Space, v: Vec3) -> Result<Point> {
        let bad = || GeomError::InvalidPoint(format!("cannot project {v:?} onto {}", space.label()));
        let w = match space {
            Space::Sphere => {
                let n = v.norm();
                if !(n > 0.0) {
                    return Err(bad());
                }
                v / n
            }
            Space::Euclidean => {
                if v.z == 0.0 || !v.z.is_finite() {
                    return Err(bad());
                }
                Vec3::new(v.x / v.z, v.y / v.z, 1.0)
            }
            Space::Hyperbolic => {
                let q = space.inner(&v, &v);
                if !(q < 0.0) {
                    return Err(bad());
                }
                let w = v / (-q).sqrt();
                if w.z < 0.0 {
                    -w
                } else {
                    w
                }
            }
        };
        if w.iter().all(|c| c.is_finite()) {
            Ok(Point { v: w, space })
        } else {
            Err(bad())
        }
    }

    pub fn euclidean(x: f64, y: f64) -> Point {
        Point { v: Vec3::new(x, y, 1.0), space: Space::Euclidean }
    }

    /// Unchecked constructor for values already known to be on the quadric.
    pub(crate) fn raw(space: Space, v: Vec3) -> Point {
        Point { v, space }
    }

    #[inline]
    pub fn coords(&self) -> &Vec3 {
        &self.v
    }

    #[inline]
    pub fn space(&self) -> Space {
        self.space
    }

    /// Deviation from the quadric equation.
    pub fn quadric_defect(&self) -> f64 {
        match self.space {
            Space::Sphere => (self.v.norm_squared() - 1.0).abs(),
            Space::Euclidean => (self.v.z - 1.0).abs(),
            Space::Hyperbolic => (self.space.inner(&self.v, &self.v) + 1.0).abs(),
        }
    }

    /// Re-projects onto the quadric if the drift exceeds the configured bound.
    pub(crate) fn renormalized(space: Space, v: Vec3) -> Result<Point> {
        let p = Point { v, space };
        if p.quadric_defect() > config::RENORMALIZE_DRIFT * v.norm_squared().max(1.0)
            || (space == Space::Hyperbolic && v.z <= 0.0)
        {
            Point::project(space, v)
        } else {
            Ok(p)
        }
    }
}

/// Distance in the space's own metric.
pub fn distance(a: &Point, b: &Point) -> Result<f64> {
    a.space.ensure_same(b.space)?;
    Ok(distance_unchecked(a, b))
}

pub(crate) fn distance_unchecked(a: &Point, b: &Point) -> f64 {
    let (x, y) = (&a.v, &b.v);
    match a.space {
        Space::Sphere => x.cross(y).norm().atan2(x.dot(y)),
        Space::Euclidean => (x.x - y.x).hypot(x.y - y.y),
        Space::Hyperbolic => {
            let d = x - y;
            let q = Space::Hyperbolic.inner(&d, &d).max(0.0);
            2.0 * (q.sqrt() / 2.0).asinh()
        }
    }
}

/// Rotation by +π/2 in the tangent plane at `p`, positively oriented so that
/// both models preserve orientation.
#[inline]
pub fn rotate_tangent(p: &Point, t: &Vec3) -> Vec3 {
    match p.space {
        Space::Sphere => t.cross(&p.v),
        Space::Euclidean => Vec3::new(-t.y, t.x, 0.0),
        Space::Hyperbolic => {
            let c = p.v.cross(t);
            Vec3::new(c.x, c.y, -c.z)
        }
    }
}

/// Orthogonal projection of an ambient vector onto the tangent plane at `p`.
pub fn project_tangent(p: &Point, v: &Vec3) -> Vec3 {
    match p.space {
        Space::Sphere => v - p.v * p.v.dot(v),
        Space::Euclidean => Vec3::new(v.x, v.y, 0.0),
        Space::Hyperbolic => v + p.v * Space::Hyperbolic.inner(&p.v, v),
    }
}

pub fn tangent_norm(space: Space, t: &Vec3) -> f64 {
    space.inner(t, t).max(0.0).sqrt()
}

pub fn normalize_tangent(space: Space, t: &Vec3) -> Option<Vec3> {
    let n = tangent_norm(space, t);
    if n > 0.0 && n.is_finite() {
        Some(t / n)
    } else {
        None
    }
}

/// Canonical orthonormal tangent frame `(e₁, e₂)` at `p` with `e₂ = J e₁`.
pub fn tangent_frame(p: &Point) -> (Vec3, Vec3) {
    let reference = if p.space == Space::Sphere && p.v.x.abs() > 0.9 {
        Vec3::y()
    } else {
        Vec3::x()
    };
    let e1 = normalize_tangent(p.space, &project_tangent(p, &reference))
        .expect("reference vector is never normal to the quadric");
    let e2 = rotate_tangent(p, &e1);
    (e1, e2)
}

/// Exponential map: follow the geodesic from `p` with initial velocity `v`.
pub fn exp(p: &Point, v: &Vec3) -> Point {
    let space = p.space;
    let len = tangent_norm(space, v);
    if len == 0.0 {
        return *p;
    }
    let u = v / len;
    let w = match space {
        Space::Sphere => p.v * len.cos() + u * len.sin(),
        Space::Euclidean => p.v + Vec3::new(v.x, v.y, 0.0),
        Space::Hyperbolic => p.v * len.cosh() + u * len.sinh(),
    };
    Point::renormalized(space, w).unwrap_or(Point { v: w, space })
}

/// Unit tangent at `a` pointing along the geodesic towards `b`.
pub fn direction(a: &Point, b: &Point) -> Result<Vec3> {
    a.space.ensure_same(b.space)?;
    let raw = match a.space {
        Space::Sphere => {
            if a.v.dot(&b.v) <= -1.0 + 1e-15 {
                return Err(GeomError::DegenerateGeodesic);
            }
            b.v - a.v * a.v.dot(&b.v)
        }
        Space::Euclidean => Vec3::new(b.v.x - a.v.x, b.v.y - a.v.y, 0.0),
        Space::Hyperbolic => b.v + a.v * Space::Hyperbolic.inner(&a.v, &b.v),
    };
    normalize_tangent(a.space, &raw).ok_or(GeomError::DegenerateGeodesic)
}

/// Point at fraction `t` of the way from `a` to `b` along the (shorter)
/// geodesic.
pub fn geodesic_point(a: &Point, b: &Point, t: f64) -> Result<Point> {
    a.space.ensure_same(b.space)?;
    let space = a.space;
    if space == Space::Sphere && a.v.dot(&b.v) <= -1.0 + 1e-12 {
        return Err(GeomError::DegenerateGeodesic);
    }
    let d = distance_unchecked(a, b);
    if d == 0.0 {
        return Ok(*a);
    }
    let w = match space {
        Space::Euclidean => a.v * (1.0 - t) + b.v * t,
        Space::Sphere => {
            let s = d.sin();
            a.v * (((1.0 - t) * d).sin() / s) + b.v * ((t * d).sin() / s)
        }
        Space::Hyperbolic => {
            let s = d.sinh();
            a.v * (((1.0 - t) * d).sinh() / s) + b.v * ((t * d).sinh() / s)
        }
    };
    let w = if space == Space::Euclidean { Vec3::new(w.x, w.y, 1.0) } else { w };
    Point::renormalized(space, w)
}

/// Oriented angle from tangent `u` to tangent `w` at `p`, in `(−π, π]`.
pub fn oriented_angle(p: &Point, u: &Vec3, w: &Vec3) -> f64 {
    let s = p.space.inner(&rotate_tangent(p, u), w);
    let c = p.space.inner(u, w);
    s.atan2(c)
}

/// Angle `∠ p apex q` in `[0, π]`.
pub fn angle_at(apex: &Point, p: &Point, q: &Point) -> Result<f64> {
    apex.space.ensure_same(p.space)?;
    apex.space.ensure_same(q.space)?;
    let u = direction(apex, p).map_err(|_| GeomError::DegenerateAngle)?;
    let w = direction(apex, q).map_err(|_| GeomError::DegenerateAngle)?;
    Ok(oriented_angle(apex, &u, &w).abs())
}

/// Matrix whose columns are `e₁`, `J e₁` and `p`. It carries the standard
/// frame at the origin to the frame `(p, e₁)`.
pub fn frame_matrix(p: &Point, e1: &Vec3) -> Mat3 {
    let e2 = rotate_tangent(p, e1);
    let mut f = Mat3::from_columns(&[*e1, e2, p.v]);
    if p.space == Space::Euclidean {
        f[(2, 0)] = 0.0;
        f[(2, 1)] = 0.0;
    }
    f
}

pub(crate) fn frame_inverse(space: Space, f: &Mat3) -> Mat3 {
    match space {
        Space::Sphere => f.transpose(),
        Space::Hyperbolic => {
            let g = space.gram();
            g * f.transpose() * g
        }
        Space::Euclidean => f.try_inverse().expect("affine frame is invertible"),
    }
}
