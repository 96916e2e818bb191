//! Congruences as form-preserving 3×3 matrices.

use serde::{Deserialize, Serialize};

use super::{
    direction, distance_unchecked, frame_inverse, frame_matrix, normalize_tangent, oriented_angle, project_tangent,
    tangent_frame, Mat3, Point, Space, Vec3,
};
use crate::config;
use crate::error::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    m: Mat3,
    space: Space,
    orientation: i8,
}

/// Parameters of the standard congruences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CongruenceSpec {
    /// Rotation by `angle` (counterclockwise) about a finite point.
    Rotation { centre: Point, angle: f64 },
    /// Parabolic motion of `H²` fixing the ideal point with Collinear model
    /// coordinates `(cos θ, sin θ)`; `through` is moved by arc length `shift`
    /// along its paracycle.
    IdealRotation { ideal_angle: f64, through: Point, shift: f64 },
    /// Translation by `length` along the geodesic from `from` towards `towards`.
    Translation { from: Point, towards: Point, length: f64 },
    /// Reflection in the geodesic through two points.
    Reflection { a: Point, b: Point },
    /// Rotation by π about `centre`.
    PointReflection { centre: Point },
}

/// Geometric type of a congruence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IsometryKind {
    Identity,
    /// Direct, with a finite fixed point.
    Rotation { centre: Point, angle: f64 },
    /// Direct, fixed-point free, preserving a geodesic (or `E²` translation).
    Translation,
    /// Direct, fixing exactly one ideal point of `H²`.
    IdealRotation,
    /// Involutive indirect congruence; `axis` is the geodesic normal.
    Reflection { axis: Vec3 },
    GlideReflection,
}

impl Isometry {
    pub fn identity(space: Space) -> Isometry {
        Isometry { m: Mat3::identity(), space, orientation: 1 }
    }

    /// Wraps a matrix after checking that it preserves the ambient form.
    pub fn from_matrix(space: Space, m: Mat3) -> Result<Isometry> {
        let iso = Isometry { m, space, orientation: 1 };
        if iso.form_defect() > config::FORM_PRESERVATION {
            return Err(GeomError::UnsupportedCongruence { space, what: "matrix does not preserve the form" });
        }
        let orientation = if iso.linear_det() > 0.0 { 1 } else { -1 };
        Ok(Isometry { orientation, ..iso })
    }

    fn unchecked(space: Space, m: Mat3) -> Isometry {
        let mut iso = Isometry { m, space, orientation: 1 };
        iso.orientation = if iso.linear_det() > 0.0 { 1 } else { -1 };
        iso
    }

    fn linear_det(&self) -> f64 {
        match self.space {
            Space::Euclidean => self.m.fixed_view::<2, 2>(0, 0).determinant(),
            _ => self.m.determinant(),
        }
    }

    #[inline]
    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    #[inline]
    pub fn space(&self) -> Space {
        self.space
    }

    /// `+1` for direct (orientation preserving), `−1` for indirect.
    #[inline]
    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn is_direct(&self) -> bool {
        self.orientation > 0
    }

    /// `‖mᵀGm − G‖∞`; for `E²` the deviation from a rigid affine map.
    pub fn form_defect(&self) -> f64 {
        match self.space {
            Space::Euclidean => {
                let r = self.m.fixed_view::<2, 2>(0, 0).into_owned();
                let d = r.transpose() * r - nalgebra::Matrix2::identity();
                let row = (self.m[(2, 0)]).abs().max(self.m[(2, 1)].abs()).max((self.m[(2, 2)] - 1.0).abs());
                d.amax().max(row)
            }
            s => {
                let g = s.gram();
                (self.m.transpose() * g * self.m - g).amax()
            }
        }
    }

    /// Maps the frame `(p₁, e₁)` to the frame `(p₂, e₂)`; `direct = false`
    /// composes with the reflection in the `e₁` geodesic.
    pub fn from_frames(p1: &Point, e1: &Vec3, p2: &Point, e2: &Vec3, direct: bool) -> Result<Isometry> {
        p1.space().ensure_same(p2.space())?;
        let space = p1.space();
        let f1 = frame_matrix(p1, e1);
        let f2 = frame_matrix(p2, e2);
        let flip = if direct { Mat3::identity() } else { Mat3::from_diagonal(&Vec3::new(1.0, -1.0, 1.0)) };
        Ok(Isometry::unchecked(space, f2 * flip * frame_inverse(space, &f1)))
    }

    /// The congruence carrying `a₁ ↦ a₂` and the direction `a₁→b₁` onto `a₂→b₂`.
    pub fn mapping_pair(a1: &Point, b1: &Point, a2: &Point, b2: &Point, direct: bool) -> Result<Isometry> {
        let e1 = direction(a1, b1)?;
        let e2 = direction(a2, b2)?;
        Isometry::from_frames(a1, &e1, a2, &e2, direct)
    }

    /// Conjugate the standard congruence `std` (acting at the origin frame)
    /// into the frame `(p, e₁)`.
    fn conjugated(p: &Point, e1: &Vec3, std: Mat3) -> Isometry {
        let f = frame_matrix(p, e1);
        Isometry::unchecked(p.space(), f * std * frame_inverse(p.space(), &f))
    }

    pub fn rotation(centre: &Point, angle: f64) -> Isometry {
        let (e1, _) = tangent_frame(centre);
        let (s, c) = angle.sin_cos();
        let std = Mat3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0);
        Isometry::conjugated(centre, &e1, std)
    }

    pub fn point_reflection(centre: &Point) -> Isometry {
        let (e1, _) = tangent_frame(centre);
        Isometry::conjugated(centre, &e1, Mat3::from_diagonal(&Vec3::new(-1.0, -1.0, 1.0)))
    }

    /// Translation by `length` along the geodesic through `through` with
    /// unit initial direction `dir`.
    pub fn translation(through: &Point, dir: &Vec3, length: f64) -> Result<Isometry> {
        let space = through.space();
        let e1 = normalize_tangent(space, &project_tangent(through, dir)).ok_or(GeomError::DegenerateGeodesic)?;
        let std = match space {
            Space::Sphere => {
                let (s, c) = length.sin_cos();
                Mat3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
            }
            Space::Euclidean => Mat3::new(1.0, 0.0, length, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0),
            Space::Hyperbolic => {
                let (s, c) = (length.sinh(), length.cosh());
                Mat3::new(c, 0.0, s, 0.0, 1.0, 0.0, s, 0.0, c)
            }
        };
        Ok(Isometry::conjugated(through, &e1, std))
    }

    pub fn translation_along(from: &Point, towards: &Point, length: f64) -> Result<Isometry> {
        let dir = direction(from, towards)?;
        Isometry::translation(from, &dir, length)
    }

    /// Reflection in the geodesic through `through` with direction `dir`.
    pub fn reflection(through: &Point, dir: &Vec3) -> Result<Isometry> {
        let space = through.space();
        let e1 = normalize_tangent(space, &project_tangent(through, dir)).ok_or(GeomError::DegenerateGeodesic)?;
        Ok(Isometry::conjugated(through, &e1, Mat3::from_diagonal(&Vec3::new(1.0, -1.0, 1.0))))
    }

    pub fn reflection_through(a: &Point, b: &Point) -> Result<Isometry> {
        let dir = direction(a, b)?;
        Isometry::reflection(a, &dir)
    }

    /// Reflection in the geodesic `{⟨n, x⟩ = 0}` of `S²`/`H²`, `n` a unit
    /// (spacelike) normal.
    pub fn reflection_in_normal(space: Space, n: &Vec3) -> Result<Isometry> {
        if space == Space::Euclidean {
            // n = (nx, ny, −d): reflect in the line nx·x + ny·y = d
            let (nx, ny, d) = (n.x, n.y, -n.z);
            let r = Mat3::new(
                1.0 - 2.0 * nx * nx,
                -2.0 * nx * ny,
                2.0 * d * nx,
                -2.0 * nx * ny,
                1.0 - 2.0 * ny * ny,
                2.0 * d * ny,
                0.0,
                0.0,
                1.0,
            );
            return Isometry::from_matrix(space, r);
        }
        let g = space.gram();
        let m = Mat3::identity() - 2.0 * n * (g * n).transpose();
        Isometry::from_matrix(space, m)
    }

    /// Parabolic motion of `H²` about the ideal point `ξ` (a null vector with
    /// `ξ₃ > 0`), shifting `through` by arc length `shift` along its paracycle.
    pub fn ideal_rotation(ideal: &Vec3, through: &Point, shift: f64) -> Result<Isometry> {
        let space = through.space();
        if space != Space::Hyperbolic {
            return Err(GeomError::UnsupportedCongruence { space, what: "rotation about an infinite point" });
        }
        let b = *through.coords();
        let k = -space.inner(ideal, &b);
        if !(k > 0.0) || space.inner(ideal, ideal).abs() > 1e-9 * ideal.norm_squared() {
            return Err(GeomError::UnsupportedCongruence { space, what: "ideal point must be a future null vector" });
        }
        let xi = ideal / k; // ⟨ξ, b⟩ = −1
        let m_in = xi - b;
        let e = -super::rotate_tangent(through, &m_in);
        let shifted = b + e * shift + xi * (shift * shift / 2.0);
        let from = Mat3::from_columns(&[b, e, xi]);
        let to = Mat3::from_columns(&[shifted, e + xi * shift, xi]);
        let inv = from.try_inverse().ok_or(GeomError::DegenerateGeodesic)?;
        Isometry::from_matrix(space, to * inv)
    }

    /// Builds a congruence from its description.
    pub fn from_spec(space: Space, spec: &CongruenceSpec) -> Result<Isometry> {
        let check = |p: &Point| p.space().ensure_same(space);
        let iso = match spec {
            CongruenceSpec::Rotation { centre, angle } => {
                check(centre)?;
                Isometry::rotation(centre, *angle)
            }
            CongruenceSpec::PointReflection { centre } => {
                check(centre)?;
                Isometry::point_reflection(centre)
            }
            CongruenceSpec::Translation { from, towards, length } => {
                check(from)?;
                check(towards)?;
                Isometry::translation_along(from, towards, *length)?
            }
            CongruenceSpec::Reflection { a, b } => {
                check(a)?;
                check(b)?;
                Isometry::reflection_through(a, b)?
            }
            CongruenceSpec::IdealRotation { ideal_angle, through, shift } => {
                if space != Space::Hyperbolic {
                    return Err(GeomError::UnsupportedCongruence { space, what: "rotation about an infinite point" });
                }
                check(through)?;
                let xi = Vec3::new(ideal_angle.cos(), ideal_angle.sin(), 1.0);
                Isometry::ideal_rotation(&xi, through, *shift)?
            }
        };
        debug_assert!(iso.form_defect() <= config::FORM_PRESERVATION, "defect {}", iso.form_defect());
        Ok(iso)
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        self.space.ensure_same(p.space())?;
        Point::renormalized(self.space, self.m * p.coords())
    }

    /// Image of a tangent vector (the linear part of the map).
    pub fn apply_vector(&self, v: &Vec3) -> Vec3 {
        let w = self.m * v;
        if self.space == Space::Euclidean {
            Vec3::new(w.x, w.y, 0.0)
        } else {
            w
        }
    }

    /// Image of a geodesic or hypercycle normal. For `S²`/`H²` this is the
    /// vector action; for `E²` lines `(nx, ny, −d)` it is the dual action.
    pub fn apply_normal(&self, n: &Vec3) -> Vec3 {
        match self.space {
            Space::Euclidean => {
                let inv = self.inverse();
                inv.m.transpose() * n
            }
            _ => self.m * n,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        assert_eq!(self.space, other.space, "composing isometries of different spaces");
        Isometry { m: self.m * other.m, space: self.space, orientation: self.orientation * other.orientation }
    }

    pub fn inverse(&self) -> Isometry {
        let m = match self.space {
            Space::Sphere => self.m.transpose(),
            Space::Hyperbolic => {
                let g = self.space.gram();
                g * self.m.transpose() * g
            }
            Space::Euclidean => self.m.try_inverse().expect("rigid affine map is invertible"),
        };
        Isometry { m, space: self.space, orientation: self.orientation }
    }

    /// Max-entry distance between matrices; a cheap equality test.
    pub fn matrix_distance(&self, other: &Isometry) -> f64 {
        (self.m - other.m).amax()
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.m - Mat3::identity()).amax() <= tol
    }

    /// Classifies the congruence. `hint` picks the representative centre of
    /// an `S²` rotation (the one within π/2 of `hint`).
    pub fn kind(&self, hint: &Point) -> IsometryKind {
        const EPS: f64 = 1e-9;
        if self.is_identity(EPS) {
            return IsometryKind::Identity;
        }
        let space = self.space;
        if self.is_direct() {
            let centre = match space {
                Space::Euclidean => {
                    let r = self.m.fixed_view::<2, 2>(0, 0).into_owned();
                    let a = nalgebra::Matrix2::identity() - r;
                    if a.amax() < EPS {
                        return IsometryKind::Translation;
                    }
                    let t = nalgebra::Vector2::new(self.m[(0, 2)], self.m[(1, 2)]);
                    match a.try_inverse() {
                        Some(inv) => {
                            let c = inv * t;
                            Point::euclidean(c.x, c.y)
                        }
                        None => return IsometryKind::Translation,
                    }
                }
                _ => {
                    let v = null_vector(&(self.m - Mat3::identity()));
                    let q = space.inner(&v, &v);
                    if space == Space::Hyperbolic && q > -1e-7 * v.norm_squared() {
                        let tr = self.m.trace();
                        return if tr > 3.0 + 1e-7 { IsometryKind::Translation } else { IsometryKind::IdealRotation };
                    }
                    let mut c = Point::project(space, v).expect("fixed direction projects");
                    if space == Space::Sphere && c.coords().dot(hint.coords()) < 0.0 {
                        c = Point::raw(space, -c.coords());
                    }
                    c
                }
            };
            let (e1, _) = tangent_frame(&centre);
            let img = project_tangent(&centre, &self.apply_vector(&e1));
            let angle = oriented_angle(&centre, &e1, &img);
            IsometryKind::Rotation { centre, angle }
        } else {
            let sq = self.compose(self);
            if !sq.is_identity(1e-8) {
                return IsometryKind::GlideReflection;
            }
            let axis = match space {
                Space::Euclidean => {
                    let r = self.m.fixed_view::<2, 2>(0, 0).into_owned();
                    // columns of R − I span the normal direction
                    let b = r - nalgebra::Matrix2::identity();
                    let c0 = b.column(0).into_owned();
                    let c1 = b.column(1).into_owned();
                    let n = if c0.norm() > c1.norm() { c0 } else { c1 };
                    let n = n / n.norm();
                    let mid = (hint.coords() + self.m * hint.coords()) / 2.0;
                    let d = n.x * mid.x + n.y * mid.y;
                    Vec3::new(n.x, n.y, -d)
                }
                _ => {
                    let v = null_vector(&(self.m + Mat3::identity()));
                    let q = space.inner(&v, &v);
                    v / q.abs().sqrt()
                }
            };
            IsometryKind::Reflection { axis }
        }
    }

    /// Displacement of `p`.
    pub fn displacement(&self, p: &Point) -> f64 {
        self.apply(p).map(|q| distance_unchecked(p, &q)).unwrap_or(f64::INFINITY)
    }
}

/// Null vector of a rank-2 3×3 matrix, from the best-conditioned pair of rows.
fn null_vector(a: &Mat3) -> Vec3 {
    let rows = [a.row(0).transpose(), a.row(1).transpose(), a.row(2).transpose()];
    let cands = [rows[0].cross(&rows[1]), rows[0].cross(&rows[2]), rows[1].cross(&rows[2])];
    let best = cands.iter().max_by(|x, y| x.norm().total_cmp(&y.norm())).copied().unwrap();
    best / best.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{distance, exp};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn pt(space: Space, x: f64, y: f64) -> Point {
        exp(&space.origin(), &Vec3::new(x, y, 0.0))
    }

    fn samples(space: Space) -> Vec<Isometry> {
        let a = pt(space, 0.3, -0.2);
        let b = pt(space, -0.4, 0.5);
        let mut v = vec![
            Isometry::rotation(&a, 0.7),
            Isometry::point_reflection(&b),
            Isometry::translation_along(&a, &b, 0.9).unwrap(),
            Isometry::reflection_through(&a, &b).unwrap(),
        ];
        if space == Space::Hyperbolic {
            v.push(Isometry::ideal_rotation(&Vec3::new(0.6, 0.8, 1.0), &a, 1.3).unwrap());
        }
        v
    }

    #[test]
    fn constructed_isometries_preserve_the_form() {
        for s in Space::ALL {
            for iso in samples(s) {
                assert!(iso.form_defect() <= config::FORM_PRESERVATION, "{s:?}: {}", iso.form_defect());
            }
        }
    }

    #[test]
    fn orientation_signs() {
        for s in Space::ALL {
            let v = samples(s);
            assert!(v[0].is_direct() && v[1].is_direct() && v[2].is_direct());
            assert!(!v[3].is_direct());
            if s == Space::Hyperbolic {
                assert!(v[4].is_direct());
            }
        }
    }

    #[test]
    fn point_reflection_is_an_involution() {
        for s in Space::ALL {
            let r = Isometry::point_reflection(&pt(s, 0.2, 0.6));
            assert!(r.compose(&r).is_identity(1e-10));
        }
    }

    #[test]
    fn planar_quarter_turn() {
        let r = Isometry::rotation(&Point::euclidean(0.0, 0.0), PI / 2.0);
        let q = r.apply(&Point::euclidean(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(q.coords().x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.coords().y, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn identity_fixes_points() {
        let p = pt(Space::Hyperbolic, 0.3, 0.1);
        assert_eq!(Isometry::identity(Space::Hyperbolic).apply(&p).unwrap(), p);
    }

    #[test]
    fn hyperbolic_translation_moves_along_its_axis() {
        let o = Space::Hyperbolic.origin();
        let b = pt(Space::Hyperbolic, 0.0, 1.0);
        let t = Isometry::translation_along(&o, &b, 0.75).unwrap();
        let img = t.apply(&o).unwrap();
        assert_abs_diff_eq!(distance(&o, &img).unwrap(), 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(distance(&img, &pt(Space::Hyperbolic, 0.0, 0.75)).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn ideal_rotation_preserves_paracycles() {
        let xi = Vec3::new(1.0, 0.0, 1.0);
        let o = Space::Hyperbolic.origin();
        let iso = Isometry::ideal_rotation(&xi, &o, 0.8).unwrap();
        for k in 0..20 {
            let p = pt(Space::Hyperbolic, 0.1 * k as f64 - 1.0, 0.37);
            let q = iso.apply(&p).unwrap();
            let before = Space::Hyperbolic.inner(&xi, p.coords());
            let after = Space::Hyperbolic.inner(&xi, q.coords());
            assert_abs_diff_eq!(before, after, epsilon = 1e-10 * before.abs().max(1.0));
        }
        assert!(matches!(iso.kind(&o), IsometryKind::IdealRotation));
    }

    #[test]
    fn ideal_rotation_is_rejected_outside_h2() {
        let spec = CongruenceSpec::IdealRotation { ideal_angle: 0.0, through: Point::euclidean(0.0, 0.0), shift: 1.0 };
        assert!(matches!(
            Isometry::from_spec(Space::Euclidean, &spec),
            Err(GeomError::UnsupportedCongruence { .. })
        ));
    }

    #[test]
    fn kinds_are_recognised() {
        for s in Space::ALL {
            let c = pt(s, 0.25, -0.1);
            match Isometry::rotation(&c, 1.1).kind(&c) {
                IsometryKind::Rotation { centre, angle } => {
                    assert_abs_diff_eq!(distance(&centre, &c).unwrap(), 0.0, epsilon = 1e-8);
                    assert_abs_diff_eq!(angle, 1.1, epsilon = 1e-9);
                }
                k => panic!("{s:?}: {k:?}"),
            }
            let a = pt(s, -0.3, 0.2);
            let refl = Isometry::reflection_through(&a, &c).unwrap();
            assert!(matches!(refl.kind(&c), IsometryKind::Reflection { .. }));
            if s != Space::Sphere {
                let t = Isometry::translation_along(&a, &c, 0.5).unwrap();
                assert!(matches!(t.kind(&c), IsometryKind::Translation), "{s:?}");
            }
        }
    }

    #[test]
    fn mapping_pair_carries_points() {
        for s in Space::ALL {
            let (a1, b1) = (pt(s, 0.1, 0.2), pt(s, 0.5, -0.1));
            let d = distance(&a1, &b1).unwrap();
            let a2 = pt(s, -0.4, 0.3);
            let b2 = exp(&a2, &Vec3::new(0.0, 0.0, 0.0));
            let dir = crate::space::tangent_frame(&a2).1;
            let b2 = exp(&b2, &(dir * d));
            for direct in [true, false] {
                let m = Isometry::mapping_pair(&a1, &b1, &a2, &b2, direct).unwrap();
                assert_abs_diff_eq!(distance(&m.apply(&a1).unwrap(), &a2).unwrap(), 0.0, epsilon = 1e-10);
                assert_abs_diff_eq!(distance(&m.apply(&b1).unwrap(), &b2).unwrap(), 0.0, epsilon = 1e-10);
                assert_eq!(m.is_direct(), direct);
            }
        }
    }
}
