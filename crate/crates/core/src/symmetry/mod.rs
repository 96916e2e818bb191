//! Congruence groups of compact convex regions.
//!
//! [`classify`] generates a short list of candidate congruences from the
//! non-smooth boundary points and verifies each by the Hausdorff distance
//! between the region and its image. [`oracle_classify`] searches the whole
//! isometry group by grids and local descent and serves as an independent
//! check.

mod axis;
mod oracle;

pub use axis::axis_for_cycle_pair;
pub use oracle::oracle_classify;

use rayon::prelude::*;
use std::f64::consts::TAU;

use crate::config;
use crate::cycles::{Cycle, CycleKind};
use crate::error::{GeomError, Result};
use crate::optimize::nelder_mead;
use crate::regions::{diameter, ConvexRegion, ModelChart};
use crate::space::{
    distance_unchecked, exp, geodesic_point, normalize_tangent, tangent_frame, Isometry, IsometryKind, Point,
    Vec3,
};

/// The congruence group of a compact region, up to conjugacy.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    Trivial,
    CentralOnly { centre: Point },
    AxialOnly { axes: Vec<Cycle> },
    CentralAndAxial { centre: Point, axes: Vec<Cycle> },
    /// Finite rotation group of order at least 3 (dihedral when axes exist).
    Rotational { order: usize, centre: Point, axes: Vec<Cycle> },
    /// Every rotation about `centre` and every reflection through it.
    FullDiskGroup { centre: Point },
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Trivial => "trivial",
            Classification::CentralOnly { .. } => "central_only",
            Classification::AxialOnly { .. } => "axial_only",
            Classification::CentralAndAxial { .. } => "central_and_axial",
            Classification::Rotational { .. } => "rotational",
            Classification::FullDiskGroup { .. } => "full_disk_group",
        }
    }

    pub fn axes(&self) -> &[Cycle] {
        match self {
            Classification::AxialOnly { axes }
            | Classification::CentralAndAxial { axes, .. }
            | Classification::Rotational { axes, .. } => axes,
            _ => &[],
        }
    }

    pub fn centre(&self) -> Option<&Point> {
        match self {
            Classification::CentralOnly { centre }
            | Classification::CentralAndAxial { centre, .. }
            | Classification::Rotational { centre, .. }
            | Classification::FullDiskGroup { centre } => Some(centre),
            _ => None,
        }
    }

    pub fn has_central_symmetry(&self) -> bool {
        match self {
            Classification::CentralOnly { .. }
            | Classification::CentralAndAxial { .. }
            | Classification::FullDiskGroup { .. } => true,
            Classification::Rotational { order, .. } => order % 2 == 0,
            _ => false,
        }
    }

    /// Label, number of axes and rotation order; two classifications of one
    /// region agree when their signatures do.
    pub fn signature(&self) -> (String, usize, usize) {
        let order = match self {
            Classification::Rotational { order, .. } => *order,
            Classification::CentralOnly { .. } | Classification::CentralAndAxial { .. } => 2,
            Classification::FullDiskGroup { .. } => usize::MAX,
            _ => 1,
        };
        let axes = if matches!(self, Classification::FullDiskGroup { .. }) { usize::MAX } else { self.axes().len() };
        (self.label().to_string(), axes, order)
    }
}

/// A verified congruence and its Hausdorff residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub iso: Isometry,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub classification: Classification,
    pub witnesses: Vec<Witness>,
    /// Relative tolerance in force.
    pub tolerance: f64,
    pub diameter: f64,
    /// Largest residual among the witnesses.
    pub max_residual: f64,
}

/// Candidate congruences derived from the boundary structure.
pub fn candidate_congruences(r: &ConvexRegion) -> Result<Vec<Isometry>> {
    r.require_compact()?;
    let space = r.space();
    let vertices = r.vertices();
    let id = Isometry::identity(space);
    let mut out = vec![id];
    match vertices.len() {
        0 => {
            let c = circumcentre(r)?;
            let (e1, e2) = tangent_frame(&c);
            out.push(Isometry::reflection(&c, &e1)?);
            out.push(Isometry::reflection(&c, &e2)?);
            out.push(Isometry::point_reflection(&c));
            out.push(Isometry::rotation(&c, 1.0));
            // axes through smooth joints of different cycles
            for chain in r.boundary_chains() {
                for arc in &chain.arcs {
                    for q in [arc.cycle.point_at(arc.t0), arc.midpoint()] {
                        if distance_unchecked(&c, &q) > 1e-9 {
                            out.push(Isometry::reflection_through(&c, &q)?);
                        }
                    }
                }
            }
        }
        1 => {
            let v = vertices[0].point;
            let (tin, tout) = vertex_tangents(r, 0)?;
            let bis = normalize_tangent(space, &(tout - tin)).ok_or(GeomError::DegenerateAngle)?;
            out.push(Isometry::reflection(&v, &bis)?);
        }
        2 => {
            let (a, b) = (vertices[0].point, vertices[1].point);
            let m = geodesic_point(&a, &b, 0.5)?;
            let d = crate::space::direction(&m, &b)?;
            out.push(Isometry::point_reflection(&m));
            out.push(Isometry::reflection(&m, &d)?);
            out.push(Isometry::reflection(&m, &crate::space::rotate_tangent(&m, &d))?);
        }
        n => {
            let diam = diameter(r)?;
            let p: Vec<Point> = vertices.iter().map(|v| v.point).collect();
            let ang: Vec<f64> = vertices.iter().map(|v| v.outer_angle).collect();
            let d01 = distance_unchecked(&p[0], &p[1]);
            let close = |x: f64, y: f64| (x - y).abs() <= config::ANGLE_MATCH;
            for i in 0..n {
                let next = (i + 1) % n;
                let prev = (i + n - 1) % n;
                if i != 0
                    && close(ang[0], ang[i])
                    && close(ang[1], ang[next])
                    && (distance_unchecked(&p[i], &p[next]) - d01).abs() <= 1e-4 * diam
                {
                    out.push(Isometry::mapping_pair(&p[0], &p[1], &p[i], &p[next], true)?);
                }
                if close(ang[0], ang[i])
                    && close(ang[1], ang[prev])
                    && (distance_unchecked(&p[i], &p[prev]) - d01).abs() <= 1e-4 * diam
                {
                    out.push(Isometry::mapping_pair(&p[0], &p[1], &p[i], &p[prev], false)?);
                }
            }
        }
    }
    Ok(out)
}

fn vertex_tangents(r: &ConvexRegion, k: usize) -> Result<(Vec3, Vec3)> {
    let mut seen = 0;
    for chain in r.boundary_chains() {
        let n = chain.arcs.len();
        for i in 0..n {
            let (a, b) = (&chain.arcs[i], &chain.arcs[(i + 1) % n]);
            let Some(p) = a.end().point().copied() else { continue };
            if chain.vertices.iter().any(|v| v.point == p) {
                if seen == k {
                    return Ok((a.cycle.tangent_at(a.t1), b.cycle.tangent_at(b.t0)));
                }
                seen += 1;
            }
        }
    }
    Err(GeomError::DegenerateAngle)
}

/// Minimax centre of the boundary: the centre of the smallest enclosing disk.
pub fn circumcentre(r: &ConvexRegion) -> Result<Point> {
    r.require_compact()?;
    let chains = r.boundary_chains();
    if chains.len() == 1 && chains[0].arcs.len() == 1 {
        if let CycleKind::Circle { .. } = chains[0].arcs[0].cycle.kind() {
            return Ok(chains[0].arcs[0].cycle.centre().expect("circle"));
        }
    }
    let samples: Vec<Point> = chains
        .iter()
        .flat_map(|c| c.arcs.iter())
        .flat_map(|a| crate::cycles::sample_arc(a, 4 * config::ARC_SAMPLES).unwrap_or_default())
        .collect();
    let w = *r.witness();
    let (e1, e2) = tangent_frame(&w);
    let f = |x: &[f64; 2]| {
        let c = exp(&w, &(e1 * x[0] + e2 * x[1]));
        samples.iter().map(|q| distance_unchecked(&c, q)).fold(0.0, f64::max)
    };
    let scale = diameter(r)?;
    let (mut x, mut v) = nelder_mead(f, [0.0, 0.0], 0.25 * scale, 2000, 1e-16);
    for _ in 0..3 {
        let (y, u) = nelder_mead(f, x, 1e-3 * scale, 2000, 1e-16);
        if u < v {
            x = y;
            v = u;
        }
    }
    Ok(exp(&w, &(e1 * x[0] + e2 * x[1])))
}

/// Hausdorff residual between `r` and its image, in a chart centred at the
/// region's witness.
pub fn residual(r: &ConvexRegion, iso: &Isometry) -> Result<f64> {
    let img = r.placed(iso)?;
    let chart = ModelChart::centred_at(r.witness(), None)?;
    match crate::regions::hausdorff_in_chart(r, &img, &chart) {
        // the image leaves the hemisphere that holds `r`
        Err(GeomError::OutsideModelDomain(_)) => Ok(f64::INFINITY),
        other => other,
    }
}

/// Classifies the congruence group of a compact region.
pub fn classify(r: &ConvexRegion, tol: f64) -> Result<SymmetryReport> {
    r.require_compact()?;
    let diam = diameter(r)?;
    let candidates = candidate_congruences(r)?;
    let residuals: Vec<Result<f64>> = candidates
        .par_iter()
        .map(|c| if c.is_identity(1e-12) { Ok(0.0) } else { residual(r, c) })
        .collect();
    let (lo, hi) = (tol * diam, 2.0 * tol * diam);
    let mut witnesses = Vec::new();
    for (iso, res) in candidates.iter().zip(residuals) {
        let res = res?;
        if res > lo && res <= hi {
            return Err(GeomError::AmbiguousNearTolerance { residual: res, lo, hi });
        }
        if res <= lo {
            witnesses.push(Witness { iso: *iso, residual: res });
        }
    }
    let classification = from_witnesses(r, &witnesses, diam)?;
    let max_residual = witnesses.iter().map(|w| w.residual).fold(0.0, f64::max);
    Ok(SymmetryReport { classification, witnesses, tolerance: tol, diameter: diam, max_residual })
}

/// Derives the classification from verified congruences, dropping
/// translations and rotations about ideal points, which no compact region admits.
pub(crate) fn from_witnesses(r: &ConvexRegion, witnesses: &[Witness], diam: f64) -> Result<Classification> {
    let hint = *r.witness();
    let space = r.space();
    let mut rotations: Vec<(Point, f64)> = Vec::new();
    let mut axes: Vec<Cycle> = Vec::new();
    for w in witnesses {
        match w.iso.kind(&hint) {
            IsometryKind::Identity => {}
            IsometryKind::Rotation { centre, angle } => {
                if angle.abs() > 1e-6 {
                    rotations.push((centre, angle.rem_euclid(TAU)));
                }
            }
            IsometryKind::Reflection { axis } => {
                let g = Cycle::geodesic_from_normal(space, &axis)?;
                if !axes.iter().any(|a| same_axis(a, &g, &hint, diam)) {
                    axes.push(g);
                }
            }
            IsometryKind::Translation | IsometryKind::IdealRotation | IsometryKind::GlideReflection => {}
        }
    }
    let centre = rotations.first().map(|(c, _)| *c);
    let generic_angle = rotations.iter().any(|(_, a)| {
        let k = (*a / TAU * 24.0).round();
        (a - k * TAU / 24.0).abs() > 1e-3
    });
    if generic_angle || axes.len() > 24 {
        return Ok(Classification::FullDiskGroup { centre: centre.unwrap_or(hint) });
    }
    let min_angle = rotations.iter().map(|(_, a)| a.min(TAU - a)).fold(f64::INFINITY, f64::min);
    let order = if min_angle.is_finite() { (TAU / min_angle).round() as usize } else { 1 };
    Ok(match (order, centre) {
        (1, _) | (_, None) if axes.is_empty() => Classification::Trivial,
        (1, _) | (_, None) => Classification::AxialOnly { axes },
        (2, Some(c)) if axes.is_empty() => Classification::CentralOnly { centre: c },
        (2, Some(c)) => Classification::CentralAndAxial { centre: c, axes },
        (n, Some(c)) => Classification::Rotational { order: n, centre: c, axes },
    })
}

/// Axes agree when points of one near the hint lie on the other.
fn same_axis(a: &Cycle, b: &Cycle, hint: &Point, diam: f64) -> bool {
    let t = a.param_of(hint);
    (-2..=2).all(|k| b.residual(&a.point_at(t + 0.25 * diam * k as f64)) < 1e-3 * diam)
}

#[cfg(test)]
mod tests;
