use crate::cycles::Cycle;
use crate::space::{Space, Vec3};

enum Anchor {
    Point(Vec3),
    Ideal(Vec3),
    Line(Vec3),
}

impl Anchor {
    fn vector(&self) -> Vec3 {
        match self {
            Anchor::Point(v) | Anchor::Ideal(v) | Anchor::Line(v) => *v,
        }
    }
}

fn anchor(c: &Cycle) -> Anchor {
    if let Some(p) = c.centre() {
        Anchor::Point(*p.coords())
    } else if let Some(xi) = c.ideal_centre() {
        Anchor::Ideal(xi)
    } else {
        Anchor::Line(c.base_normal().expect("geodesic or hypercycle"))
    }
}

/// The symmetry axis shared by two cycles bounding a compact intersection:
/// the line through their centres, the perpendicular from a centre to a base
/// line, or the common perpendicular of two ultraparallel base lines.
/// `None` when no such line exists (concentric circles, intersecting or
/// parallel base lines, an ideal centre at an end of a base line).
pub fn axis_for_cycle_pair(a: &Cycle, b: &Cycle) -> Option<Cycle> {
    let space = a.space();
    if space != b.space() {
        return None;
    }
    let (x, y) = (anchor(a), anchor(b));
    if space == Space::Euclidean {
        return match (x, y) {
            (Anchor::Point(p), Anchor::Point(q)) => Cycle::geodesic_from_normal(space, &euclidean_line(&p, &q)?).ok(),
            (Anchor::Point(p), Anchor::Line(n)) | (Anchor::Line(n), Anchor::Point(p)) => {
                let q = p + Vec3::new(n.x, n.y, 0.0);
                Cycle::geodesic_from_normal(space, &euclidean_line(&p, &q)?).ok()
            }
            _ => None,
        };
    }
    let (u, v) = (x.vector(), y.vector());
    let m = space.gram() * u.cross(&v);
    if m.norm() < 1e-12 * u.norm() * v.norm() {
        return None;
    }
    Cycle::geodesic_from_normal(space, &m).ok()
}

/// `(nx, ny, −d)` of the line through two affine points.
fn euclidean_line(p: &Vec3, q: &Vec3) -> Option<Vec3> {
    let d = q - p;
    let h = d.x.hypot(d.y);
    if h < 1e-12 {
        return None;
    }
    let n = Vec3::new(-d.y / h, d.x / h, 0.0);
    Some(Vec3::new(n.x, n.y, -(n.x * p.x + n.y * p.y)))
}
