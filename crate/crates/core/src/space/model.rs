//! Collinear (Klein / central projection) and conformal (Poincaré /
//! stereographic) models of the three planes.
//!
//! | space | collinear | conformal |
//! |-------|-----------|-----------|
//! | `H²`  | `(x, y, z) ↦ (x, y)/z` | `(x, y, z) ↦ (x, y)/(1 + z)` |
//! | `S²`  | `(x, y, z) ↦ −(x, y)/z`, open southern hemisphere | `(x, y, z) ↦ 2(x, y)/(1 − z)`, all but the north pole |
//! | `E²`  | identity | identity |
//!
//! The sphere models live in the tangent plane at the south pole, which is
//! the model centre.

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use super::{Point, Space, Vec3};
use crate::error::{GeomError, Result};

pub type Vec2 = Vector2<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    #[serde(alias = "klein")]
    Collinear,
    #[serde(alias = "poincare")]
    Conformal,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Collinear => "collinear",
            ModelKind::Conformal => "conformal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelPoint {
    pub u: Vec2,
    pub model: ModelKind,
    pub space: Space,
}

impl ModelPoint {
    pub fn new(space: Space, model: ModelKind, x: f64, y: f64) -> ModelPoint {
        ModelPoint { u: Vec2::new(x, y), model, space }
    }
}

pub fn to_model(p: &Point, model: ModelKind) -> Result<ModelPoint> {
    let v = p.coords();
    let space = p.space();
    let u = match (space, model) {
        (Space::Euclidean, _) => Vec2::new(v.x, v.y),
        (Space::Hyperbolic, ModelKind::Collinear) => Vec2::new(v.x / v.z, v.y / v.z),
        (Space::Hyperbolic, ModelKind::Conformal) => Vec2::new(v.x, v.y) / (1.0 + v.z),
        (Space::Sphere, ModelKind::Collinear) => {
            if !(v.z < 0.0) {
                return Err(GeomError::OutsideModelDomain("collinear"));
            }
            Vec2::new(-v.x / v.z, -v.y / v.z)
        }
        (Space::Sphere, ModelKind::Conformal) => {
            let den = 1.0 - v.z;
            if !(den > 1e-15) {
                return Err(GeomError::OutsideModelDomain("conformal"));
            }
            Vec2::new(v.x, v.y) * (2.0 / den)
        }
    };
    Ok(ModelPoint { u, model, space })
}

pub fn from_model(mp: &ModelPoint) -> Result<Point> {
    let u = mp.u;
    let r2 = u.norm_squared();
    if !u.iter().all(|c| c.is_finite()) {
        return Err(GeomError::OutsideModelDomain(mp.model.name()));
    }
    let v = match (mp.space, mp.model) {
        (Space::Euclidean, _) => return Ok(Point::euclidean(u.x, u.y)),
        (Space::Hyperbolic, m) => {
            if !(r2 < 1.0) {
                return Err(GeomError::OutsideModelDomain(m.name()));
            }
            match m {
                ModelKind::Collinear => Vec3::new(u.x, u.y, 1.0) / (1.0 - r2).sqrt(),
                ModelKind::Conformal => Vec3::new(2.0 * u.x, 2.0 * u.y, 1.0 + r2) / (1.0 - r2),
            }
        }
        (Space::Sphere, ModelKind::Collinear) => Vec3::new(u.x, u.y, -1.0) / (1.0 + r2).sqrt(),
        (Space::Sphere, ModelKind::Conformal) => {
            let s = 4.0 / (r2 + 4.0);
            Vec3::new(u.x * s, u.y * s, (r2 - 4.0) / (r2 + 4.0))
        }
    };
    Point::renormalized(mp.space, v)
}

/// Collinear model coordinates of a point; a convenience for constructors.
pub fn klein(space: Space, x: f64, y: f64) -> Result<Point> {
    from_model(&ModelPoint::new(space, ModelKind::Collinear, x, y))
}

/// Ratio of the model (Euclidean) arc element to the intrinsic arc element
/// at model point `u` in direction `du`.
pub fn arc_element_ratio(space: Space, model: ModelKind, u: &Vec2, du: &Vec2) -> f64 {
    let r2 = u.norm_squared();
    let dd = du.norm_squared();
    let ud = u.dot(du);
    let intrinsic2 = match (space, model) {
        (Space::Euclidean, _) => dd,
        (Space::Hyperbolic, ModelKind::Collinear) => dd / (1.0 - r2) + ud * ud / (1.0 - r2).powi(2),
        (Space::Hyperbolic, ModelKind::Conformal) => 4.0 * dd / (1.0 - r2).powi(2),
        (Space::Sphere, ModelKind::Collinear) => (dd * (1.0 + r2) - ud * ud) / (1.0 + r2).powi(2),
        (Space::Sphere, ModelKind::Conformal) => dd / (1.0 + r2 / 4.0).powi(2),
    };
    (dd / intrinsic2).sqrt()
}

/// Derivative `dΦ′/dΦ` of the collinear-model image of an angle whose apex
/// is at distance `r` from the model centre, with `Φ` measured from the
/// outward radial direction.
///
/// Sphere: `cos r / (1 − sin²r·sin²Φ) ∈ [cos r, 1/cos r]`.
/// Hyperbolic: `cosh r / (1 + sinh²r·sin²Φ) ∈ [1/cosh r, cosh r]`.
pub fn angle_distortion(space: Space, r: f64, phi: f64) -> Result<f64> {
    let s2 = phi.sin().powi(2);
    match space {
        Space::Sphere => {
            if !(0.0..std::f64::consts::FRAC_PI_2).contains(&r) {
                return Err(GeomError::OutOfRange { what: "sphere apex distance", value: r });
            }
            Ok(r.cos() / (1.0 - r.sin().powi(2) * s2))
        }
        Space::Hyperbolic => {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(GeomError::OutOfRange { what: "hyperbolic apex distance", value: r });
            }
            Ok(r.cosh() / (1.0 + r.sinh().powi(2) * s2))
        }
        Space::Euclidean => Err(GeomError::UnsupportedInSpace { space, what: "angle distortion" }),
    }
}

/// Sharp bounds `[min, max]` of [`angle_distortion`] over all `Φ`.
pub fn angle_distortion_bounds(space: Space, r: f64) -> Result<(f64, f64)> {
    let a = angle_distortion(space, r, 0.0)?;
    let b = angle_distortion(space, r, std::f64::consts::FRAC_PI_2)?;
    Ok((a.min(b), a.max(b)))
}

/// Closed-form image angle: `tan Φ′ = tan Φ · cos r` (sphere) or
/// `tan Φ · cosh r` (hyperbolic), on the continuous branch.
pub fn collinear_image_angle(space: Space, r: f64, phi: f64) -> f64 {
    let s = match space {
        Space::Sphere => r.cos(),
        Space::Hyperbolic => r.cosh(),
        Space::Euclidean => 1.0,
    };
    let base = (s * phi.sin()).atan2(phi.cos());
    // atan2 keeps the quadrant of Φ; unwrap to the branch nearest Φ
    let k = ((phi - base) / std::f64::consts::TAU).round();
    base + k * std::f64::consts::TAU
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{distance, exp};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn centre_maps_to_zero() {
        for s in Space::ALL {
            for m in [ModelKind::Collinear, ModelKind::Conformal] {
                let mp = to_model(&s.origin(), m).unwrap();
                assert_abs_diff_eq!(mp.u.norm(), 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn hyperbolic_radial_coordinates() {
        for r in [0.1, 1.0, 2.5] {
            let p = exp(&Space::Hyperbolic.origin(), &Vec3::new(r, 0.0, 0.0));
            let k = to_model(&p, ModelKind::Collinear).unwrap();
            assert_abs_diff_eq!(k.u.x, r.tanh(), epsilon = 1e-14);
            let c = to_model(&p, ModelKind::Conformal).unwrap();
            assert_abs_diff_eq!(c.u.x, (r / 2.0).tanh(), epsilon = 1e-14);
        }
        let p = klein(Space::Hyperbolic, 1f64.tanh(), 0.0).unwrap();
        assert_abs_diff_eq!(distance(&Space::Hyperbolic.origin(), &p).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn conformal_radius_from_integrated_arc_element() {
        // integrate ds = 2 du / (1 − u²) from 0 to ρ by Simpson and invert for r = 1.3
        let target = 1.3;
        let length = |rho: f64| {
            let n = 2000;
            let h = rho / n as f64;
            let f = |u: f64| 2.0 / (1.0 - u * u);
            let mut s = f(0.0) + f(rho);
            for i in 1..n {
                s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            s * h / 3.0
        };
        let (mut lo, mut hi) = (0.0, 0.999);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if length(mid) < target {
                lo = mid
            } else {
                hi = mid
            }
        }
        let p = exp(&Space::Hyperbolic.origin(), &Vec3::new(0.0, target, 0.0));
        let c = to_model(&p, ModelKind::Conformal).unwrap();
        assert_abs_diff_eq!(c.u.y, lo, epsilon = 1e-10);
    }

    #[test]
    fn round_trips() {
        for s in Space::ALL {
            for m in [ModelKind::Collinear, ModelKind::Conformal] {
                for (x, y) in [(0.3, -0.2), (-0.7, 0.1), (0.0, 0.5)] {
                    let p = exp(&s.origin(), &Vec3::new(x, y, 0.0));
                    let q = from_model(&to_model(&p, m).unwrap()).unwrap();
                    assert_abs_diff_eq!((p.coords() - q.coords()).norm(), 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn domain_violations() {
        let north = Point::new(Space::Sphere, Vec3::new(0.0, 0.0, 1.0)).unwrap();
        assert!(to_model(&north, ModelKind::Conformal).is_err());
        let equator = Point::new(Space::Sphere, Vec3::new(1.0, 0.0, 0.0)).unwrap();
        assert!(to_model(&equator, ModelKind::Collinear).is_err());
        assert!(klein(Space::Hyperbolic, 0.8, 0.7).is_err());
    }

    #[test]
    fn distortion_values() {
        assert_abs_diff_eq!(angle_distortion(Space::Sphere, PI / 3.0, 0.0).unwrap(), 0.5, epsilon = 1e-15);
        let r = 2f64.acosh();
        assert_abs_diff_eq!(angle_distortion(Space::Hyperbolic, r, PI / 2.0).unwrap(), 0.5, epsilon = 1e-15);
        for phi in [0.0, 0.4, 1.9] {
            assert_eq!(angle_distortion(Space::Sphere, 0.0, phi).unwrap(), 1.0);
            assert_eq!(angle_distortion(Space::Hyperbolic, 0.0, phi).unwrap(), 1.0);
        }
        assert!(angle_distortion(Space::Sphere, PI / 2.0, 0.0).is_err());
        assert!(angle_distortion(Space::Hyperbolic, -0.1, 0.0).is_err());
    }

    #[test]
    fn image_angle_is_continuous_and_increasing() {
        for space in [Space::Sphere, Space::Hyperbolic] {
            let mut prev = collinear_image_angle(space, 0.9, -0.01);
            for i in 0..=700 {
                let phi = i as f64 * 0.01;
                let a = collinear_image_angle(space, 0.9, phi);
                assert!(a > prev);
                prev = a;
            }
        }
    }
}
