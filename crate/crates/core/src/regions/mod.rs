//! Closed convex regions bounded by finitely many cycles.
//!
//! A [`ConvexRegion`] is an intersection of half-domains, each the convex
//! side of a cycle (or either side of a geodesic). Intersection of regions
//! is concatenation of constraint lists; the boundary is derived on demand
//! as a list of [`ArcChain`]s and cached.

mod chain;
mod ideal;
mod measure;

pub use chain::{ArcChain, Vertex};
pub use ideal::IdealArc;
pub(crate) use measure::hausdorff_in_chart;
pub use measure::{area, diameter, diameter_pair, hausdorff_distance, radial_function, support_function, ModelChart};

use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use crate::config;
use crate::cycles::{intersect_cycles, Cycle, CycleArc, CycleKind, Side};
use crate::error::{GeomError, Result};
use crate::optimize::nelder_mead;
use crate::space::{distance_unchecked, exp, geodesic_point, rotate_tangent, tangent_frame, Isometry, Point, Space, Vec3};

/// One constraint: the points on the chosen side of `cycle`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Half {
    pub cycle: Cycle,
    pub side: Side,
}

impl Half {
    pub fn convex(cycle: Cycle) -> Half {
        Half { cycle, side: Side::Convex }
    }

    /// Signed distance to the boundary, positive inside.
    pub fn margin(&self, p: &Point) -> f64 {
        match self.side {
            Side::Convex => self.cycle.side_of(p),
            Side::Concave => -self.cycle.side_of(p),
        }
    }

    fn transformed(&self, iso: &Isometry) -> Result<Half> {
        Ok(Half { cycle: self.cycle.transformed(iso)?, side: self.side })
    }

    /// The same half-domain with a cycle oriented so that the region lies
    /// on its left. Only geodesics can be flipped.
    pub(crate) fn oriented(&self) -> Cycle {
        match self.side {
            Side::Convex => self.cycle,
            Side::Concave => {
                let n = self.cycle.base_normal().expect("concave halves are geodesic");
                Cycle::geodesic_from_normal(self.cycle.space(), &-n).expect("flipped normal stays valid")
            }
        }
    }
}

/// Result of a membership query.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    pub inside: bool,
    /// Minimum over constraints of the signed distance, positive inside.
    pub margin: f64,
}

#[derive(Debug, Clone)]
pub struct ConvexRegion {
    space: Space,
    halves: Vec<Half>,
    placement: Isometry,
    witness: Point,
    witness_margin: f64,
    boundary: OnceLock<Boundary>,
}

#[derive(Debug, Clone)]
struct Boundary {
    chains: Vec<ArcChain>,
    redundant: Vec<bool>,
}

impl PartialEq for ConvexRegion {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.halves == other.halves
    }
}

/// Outcome of intersecting two regions.
#[derive(Debug, Clone)]
pub enum IntersectionResult {
    EmptyInterior,
    CompactLens { region: ConvexRegion, chain: ArcChain },
    Unbounded { region: ConvexRegion, description: String },
    /// Two geodesic sides lie on one line facing each other; the common
    /// part is this segment (or ray, or line).
    DegenerateChord { segment: CycleArc },
}

impl IntersectionResult {
    /// Status of an existing region with nonempty interior.
    pub fn from_region(region: ConvexRegion) -> IntersectionResult {
        if region.is_compact() {
            let chain = region.boundary_chains()[0].clone();
            IntersectionResult::CompactLens { region, chain }
        } else {
            let ideal = if region.space == Space::Hyperbolic { region.ideal_boundary().len() } else { 0 };
            let description = format!(
                "{} boundary component(s), {} ideal boundary piece(s)",
                region.boundary_chains().len(),
                ideal
            );
            IntersectionResult::Unbounded { region, description }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            IntersectionResult::EmptyInterior => "empty_interior",
            IntersectionResult::CompactLens { .. } => "compact_lens",
            IntersectionResult::Unbounded { .. } => "unbounded",
            IntersectionResult::DegenerateChord { .. } => "degenerate_chord",
        }
    }

    pub fn region(&self) -> Option<&ConvexRegion> {
        match self {
            IntersectionResult::CompactLens { region, .. } | IntersectionResult::Unbounded { region, .. } => {
                Some(region)
            }
            _ => None,
        }
    }
}

impl ConvexRegion {
    /// Builds a region from explicit constraints.
    pub fn from_halves(space: Space, halves: Vec<Half>) -> Result<ConvexRegion> {
        ConvexRegion::assemble(space, halves, Isometry::identity(space))
    }

    fn assemble(space: Space, halves: Vec<Half>, placement: Isometry) -> Result<ConvexRegion> {
        if halves.is_empty() {
            return Err(GeomError::UnsupportedInSpace { space, what: "a region needs at least one constraint" });
        }
        if halves.len() > config::MAX_CONSTRAINTS {
            return Err(GeomError::TooManyConstraints(halves.len(), config::MAX_CONSTRAINTS));
        }
        for h in &halves {
            space.ensure_same(h.cycle.space())?;
            if h.side == Side::Concave && h.cycle.kind() != CycleKind::Geodesic {
                return Err(GeomError::NotConvex(h.cycle.kind().name()));
            }
        }
        let (witness, witness_margin) = find_witness(space, &halves)?;
        Ok(ConvexRegion { space, halves, placement, witness, witness_margin, boundary: OnceLock::new() })
    }

    pub fn disk(centre: Point, r: f64) -> Result<ConvexRegion> {
        let c = Cycle::circle(centre, r)?;
        ConvexRegion::from_halves(centre.space(), vec![Half::convex(c)])
    }

    /// The closed half-plane on the left of the geodesic `a → b`.
    pub fn half_plane(a: &Point, b: &Point) -> Result<ConvexRegion> {
        let g = Cycle::geodesic(a, b)?;
        ConvexRegion::from_halves(a.space(), vec![Half::convex(g)])
    }

    /// `E²` strip of the given width whose midline passes through `p` with direction `dir`.
    pub fn strip(p: &Point, dir: &Vec3, width: f64) -> Result<ConvexRegion> {
        let space = p.space();
        if space != Space::Euclidean {
            return Err(GeomError::UnsupportedInSpace { space, what: "strip" });
        }
        if !(width > 0.0 && width.is_finite()) {
            return Err(GeomError::OutOfRange { what: "strip width", value: width });
        }
        let mid = Cycle::geodesic_through(p, dir)?;
        let n = mid.base_normal().expect("geodesic");
        let h = width / 2.0;
        let upper = Cycle::geodesic_from_normal(space, &Vec3::new(n.x, n.y, n.z - h))?;
        let lower = Cycle::geodesic_from_normal(space, &Vec3::new(n.x, n.y, n.z + h))?;
        ConvexRegion::from_halves(space, vec![Half { cycle: upper, side: Side::Concave }, Half::convex(lower)])
    }

    /// Paraball with ideal centre `ideal` whose boundary passes through `through`.
    pub fn paraball(ideal: &Vec3, through: &Point) -> Result<ConvexRegion> {
        let space = through.space();
        if space != Space::Hyperbolic {
            return Err(GeomError::UnsupportedInSpace { space, what: "paraball" });
        }
        ConvexRegion::from_halves(space, vec![Half::convex(Cycle::paracycle(ideal, through)?)])
    }

    /// The convex side of the hypercycle at distance `l` on the left of the
    /// geodesic `a → b`; it contains that geodesic.
    pub fn hypercycle_region(a: &Point, b: &Point, l: f64) -> Result<ConvexRegion> {
        let space = a.space();
        if space != Space::Hyperbolic {
            return Err(GeomError::UnsupportedInSpace { space, what: "hypercycle region" });
        }
        ConvexRegion::from_halves(space, vec![Half::convex(Cycle::hypercycle_over(a, b, l)?)])
    }

    /// Points within distance `l` of the geodesic through `a` and `b`.
    pub fn band(a: &Point, b: &Point, l: f64) -> Result<ConvexRegion> {
        let space = a.space();
        if space != Space::Hyperbolic {
            return Err(GeomError::UnsupportedInSpace { space, what: "hypercycle band" });
        }
        let left = Cycle::hypercycle_over(a, b, l)?;
        let right = Cycle::hypercycle_over(b, a, l)?;
        ConvexRegion::from_halves(space, vec![Half::convex(left), Half::convex(right)])
    }

    /// Geodesic polygon with counterclockwise vertices.
    pub fn polygon(vertices: &[Point]) -> Result<ConvexRegion> {
        let space = vertices.first().ok_or(GeomError::EmptyInterior)?.space();
        let n = vertices.len();
        let mut halves = Vec::with_capacity(n);
        for i in 0..n {
            halves.push(Half::convex(Cycle::geodesic(&vertices[i], &vertices[(i + 1) % n])?));
        }
        ConvexRegion::from_halves(space, halves)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn halves(&self) -> &[Half] {
        &self.halves
    }

    /// Congruence applied to the constraints since construction.
    pub fn placement(&self) -> &Isometry {
        &self.placement
    }

    /// An interior point.
    pub fn witness(&self) -> &Point {
        &self.witness
    }

    /// Inscribed margin at the witness (capped at 1 for unbounded regions).
    pub fn witness_margin(&self) -> f64 {
        self.witness_margin
    }

    /// Image under a congruence.
    pub fn placed(&self, iso: &Isometry) -> Result<ConvexRegion> {
        self.space.ensure_same(iso.space())?;
        let halves = self.halves.iter().map(|h| h.transformed(iso)).collect::<Result<Vec<_>>>()?;
        let witness = iso.apply(&self.witness)?;
        Ok(ConvexRegion {
            space: self.space,
            halves,
            placement: iso.compose(&self.placement),
            witness,
            witness_margin: self.witness_margin,
            boundary: OnceLock::new(),
        })
    }

    /// Intersection with another region; `EmptyInterior` if it has none.
    pub fn intersect(&self, other: &ConvexRegion) -> Result<ConvexRegion> {
        self.space.ensure_same(other.space)?;
        let mut halves = self.halves.clone();
        halves.extend_from_slice(&other.halves);
        ConvexRegion::from_halves(self.space, halves)
    }

    pub fn contains(&self, p: &Point) -> Result<Membership> {
        self.space.ensure_same(p.space())?;
        let margin = self.margin(p);
        Ok(Membership { inside: margin >= -config::MEMBERSHIP, margin })
    }

    pub(crate) fn margin(&self, p: &Point) -> f64 {
        min_margin(&self.halves, p)
    }

    fn boundary(&self) -> &Boundary {
        self.boundary.get_or_init(|| chain::build(self))
    }

    /// One chain per connected boundary component.
    pub fn boundary_chains(&self) -> &[ArcChain] {
        &self.boundary().chains
    }

    /// Constraints whose cycle contributes no boundary arc.
    pub fn redundant(&self) -> &[bool] {
        &self.boundary().redundant
    }

    /// Redundancy by probing: dropping constraint `i` changes nothing on
    /// `probes` points just outside its cycle.
    pub fn probe_redundant(&self, i: usize, probes: usize) -> bool {
        let h = &self.halves[i];
        let c = h.oriented();
        let others: Vec<Half> =
            self.halves.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| *h).collect();
        if others.is_empty() {
            return false;
        }
        let (t0, t1) = match c.period() {
            Some(p) => (0.0, p),
            None => CycleArc::full(c).clipped_params(probe_radius(self)),
        };
        (0..probes).all(|k| {
            let t = t0 + (t1 - t0) * (k as f64 + 0.5) / probes as f64;
            let p = c.point_at(t);
            let out = rotate_tangent(&p, &c.tangent_at(t)) * -1e-7;
            min_margin(&others, &exp(&p, &out)) < 0.0
        })
    }

    /// Compact: a single closed boundary chain of bounded arcs.
    pub fn is_compact(&self) -> bool {
        let chains = self.boundary_chains();
        match self.space {
            Space::Sphere => true,
            _ => chains.len() == 1 && chains[0].closed && chains[0].arcs.iter().all(|a| a.is_bounded()),
        }
    }

    pub fn require_compact(&self) -> Result<()> {
        if self.is_compact() {
            Ok(())
        } else {
            Err(GeomError::NonCompact)
        }
    }

    /// Non-smooth boundary points of a compact region.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.boundary_chains().iter().flat_map(|c| c.vertices.iter().copied()).collect()
    }

    /// Ideal boundary of an `H²` region as closed arcs of the circle at
    /// infinity (a single point is a zero-length arc).
    pub fn ideal_boundary(&self) -> Vec<IdealArc> {
        ideal::ideal_boundary(self)
    }

    /// Whether both regions have the same constraint set, up to order.
    pub fn same_constraints(&self, other: &ConvexRegion) -> bool {
        let matches = |a: &Half, b: &Half| {
            let (ca, cb) = (a.oriented(), b.oriented());
            match (ca.kind(), cb.kind()) {
                (CycleKind::Geodesic, CycleKind::Geodesic) => {
                    (ca.base_normal().expect("geodesic") - cb.base_normal().expect("geodesic")).amax() <= 1e-9
                }
                _ => a.side == b.side && ca.coincides(&cb),
            }
        };
        self.space == other.space
            && self.halves.len() == other.halves.len()
            && self.halves.iter().all(|a| other.halves.iter().any(|b| matches(a, b)))
            && other.halves.iter().all(|b| self.halves.iter().any(|a| matches(a, b)))
    }

    /// Number of isolated ideal points (zero-length ideal arcs).
    pub fn ideal_point_count(&self) -> usize {
        self.ideal_boundary().iter().filter(|a| a.is_point()).count()
    }
}

/// Intersects two regions and classifies the outcome.
pub fn intersect_regions(a: &ConvexRegion, b: &ConvexRegion) -> Result<IntersectionResult> {
    a.space.ensure_same(b.space)?;
    let mut halves = a.halves.clone();
    halves.extend_from_slice(&b.halves);
    match ConvexRegion::from_halves(a.space, halves.clone()) {
        Ok(region) => Ok(IntersectionResult::from_region(region)),
        Err(GeomError::EmptyInterior) => Ok(match degenerate_chord(a.space, &halves) {
            Some(segment) => IntersectionResult::DegenerateChord { segment },
            None => IntersectionResult::EmptyInterior,
        }),
        Err(e) => Err(e),
    }
}

/// The common segment when two geodesic constraints face each other on one line.
fn degenerate_chord(space: Space, halves: &[Half]) -> Option<CycleArc> {
    for (i, a) in halves.iter().enumerate() {
        for b in &halves[i + 1..] {
            if a.cycle.kind() != CycleKind::Geodesic || b.cycle.kind() != CycleKind::Geodesic {
                continue;
            }
            let (ca, cb) = (a.oriented(), b.oriented());
            let (na, nb) = (ca.base_normal()?, cb.base_normal()?);
            let opposite = if space == Space::Euclidean {
                (na.x + nb.x).abs() + (na.y + nb.y).abs() + (na.z + nb.z).abs() < 1e-10
            } else {
                (na + nb).amax() < 1e-10
            };
            if !opposite {
                continue;
            }
            let rest: Vec<Half> = halves.iter().filter(|h| *h != a && *h != b).copied().collect();
            let arc = chain::feasible_arc(&ca, &rest)?;
            return Some(arc);
        }
    }
    None
}

pub(crate) fn min_margin(halves: &[Half], p: &Point) -> f64 {
    halves.iter().map(|h| h.margin(p)).fold(f64::INFINITY, f64::min)
}

fn probe_radius(r: &ConvexRegion) -> f64 {
    let o = r.space.origin();
    distance_unchecked(&o, &r.witness) + 10.0
}

/// Maximizes the capped inscribed margin over a set of starting points.
fn find_witness(space: Space, halves: &[Half]) -> Result<(Point, f64)> {
    const CAP: f64 = 1.0;
    let score = |p: &Point| min_margin(halves, p).min(CAP);
    let mut starts: Vec<Point> = vec![space.origin()];
    let mut crossings = Vec::new();
    for (i, a) in halves.iter().enumerate() {
        let c = a.oriented();
        match c.kind() {
            CycleKind::Circle { radius } => {
                let centre = c.centre().expect("circle");
                starts.push(centre);
                for k in 0..8 {
                    let t = k as f64 * std::f64::consts::TAU / 8.0;
                    starts.push(
                        geodesic_point(&c.point_at(t), &centre, 0.05_f64.min(1e-3 / radius.max(1e-3)))
                            .unwrap_or(centre),
                    );
                }
            }
            _ => {
                for k in -4..=4 {
                    let t = k as f64 * 0.75;
                    let p = c.point_at(t);
                    let left = rotate_tangent(&p, &c.tangent_at(t));
                    for s in [1e-3, 0.1, 0.6] {
                        starts.push(exp(&p, &(left * s)));
                    }
                }
            }
        }
        for b in &halves[i + 1..] {
            if let Ok(x) = intersect_cycles(&a.cycle, &b.cycle) {
                crossings.extend(x.points());
            }
        }
    }
    let feasible: Vec<Point> =
        crossings.iter().filter(|p| min_margin(halves, p) >= -1e-9).copied().collect();
    for (i, p) in feasible.iter().enumerate() {
        for q in &feasible[i + 1..] {
            if let Ok(m) = geodesic_point(p, q, 0.5) {
                starts.push(m);
            }
        }
    }
    if feasible.len() >= 3 {
        // centroid-like point of the feasible crossings
        let mut acc = Vec3::zeros();
        for p in &feasible {
            acc += p.coords();
        }
        if let Ok(c) = Point::project(space, acc / feasible.len() as f64) {
            starts.push(c);
        }
    }
    let mut best = starts
        .iter()
        .map(|p| (*p, score(p)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least the origin");
    // refine in the tangent chart at the best start
    let step = if best.1 > 0.0 { 0.5 * best.1 } else { 1e-3 };
    for _ in 0..2 {
        let p0 = best.0;
        let (e1, e2) = tangent_frame(&p0);
        let f = |x: &[f64; 2]| -score(&exp(&p0, &(e1 * x[0] + e2 * x[1])));
        let (x, v) = nelder_mead(f, [0.0, 0.0], step, 200, 1e-16);
        if -v > best.1 {
            best = (exp(&p0, &(e1 * x[0] + e2 * x[1])), -v);
        }
    }
    if best.1 > config::INTERIOR_MARGIN {
        Ok(best)
    } else {
        Err(GeomError::EmptyInterior)
    }
}

#[cfg(test)]
mod tests;
