use std::f64::consts::TAU;

use super::ConvexRegion;
use crate::config;
use crate::cycles::CycleArc;
use crate::error::{GeomError, Result};
use crate::optimize::golden_max;
use crate::space::model::{to_model, ModelKind, Vec2};
use crate::space::{
    distance_unchecked, exp, geodesic_point, normalize_tangent, project_tangent, tangent_frame, Isometry, Point,
    Space, Vec3,
};

/// Collinear-model chart in which a chosen point sits at the model centre
/// and a chosen tangent direction points along the first axis.
#[derive(Debug, Clone, Copy)]
pub struct ModelChart {
    iso: Isometry,
}

impl ModelChart {
    pub fn centred_at(base: &Point, dir: Option<&Vec3>) -> Result<ModelChart> {
        let space = base.space();
        let e = match dir {
            Some(d) => normalize_tangent(space, &project_tangent(base, d)).ok_or(GeomError::DegenerateGeodesic)?,
            None => tangent_frame(base).0,
        };
        let o = space.origin();
        let iso = Isometry::from_frames(base, &e, &o, &tangent_frame(&o).0, true)?;
        Ok(ModelChart { iso })
    }

    pub fn coords(&self, p: &Point) -> Result<Vec2> {
        Ok(to_model(&self.iso.apply(p)?, ModelKind::Collinear)?.u)
    }

    pub fn isometry(&self) -> &Isometry {
        &self.iso
    }
}

/// Boundary of a compact region with model coordinates of coarse samples.
struct SampledBoundary<'a> {
    chart: &'a ModelChart,
    arcs: Vec<(CycleArc, Vec<(f64, Vec2)>)>,
}

const COARSE: usize = 16;

impl<'a> SampledBoundary<'a> {
    fn new(r: &ConvexRegion, chart: &'a ModelChart) -> Result<SampledBoundary<'a>> {
        r.require_compact()?;
        let mut arcs = Vec::new();
        for chain in r.boundary_chains() {
            for arc in &chain.arcs {
                let mut s = Vec::with_capacity(COARSE + 1);
                for i in 0..=COARSE {
                    let t = arc.t0 + (arc.t1 - arc.t0) * i as f64 / COARSE as f64;
                    s.push((t, chart.coords(&arc.cycle.point_at(t))?));
                }
                arcs.push((*arc, s));
            }
        }
        Ok(SampledBoundary { chart, arcs })
    }

    fn value(&self, arc: &CycleArc, t: f64, u: &Vec2) -> f64 {
        match self.chart.coords(&arc.cycle.point_at(t)) {
            Ok(x) => u.dot(&x),
            Err(_) => f64::NAN,
        }
    }

    /// `max ⟨u, x⟩` over the model image.
    fn support(&self, u: &Vec2) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for (arc, samples) in &self.arcs {
            let (i, v) = samples
                .iter()
                .enumerate()
                .map(|(i, (_, x))| (i, u.dot(x)))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("samples");
            let step = (arc.t1 - arc.t0) / COARSE as f64;
            let t = samples[i].0;
            // a closed circle wraps, so its bracket may cross the seam
            let (lo, hi) = if arc.t1 - arc.t0 >= TAU - 1e-12 {
                (t - step, t + step)
            } else {
                ((t - step).max(arc.t0), (t + step).min(arc.t1))
            };
            let (_, g) = golden_max(|t| self.value(arc, t, u), lo, hi, 48);
            best = best.max(v).max(g);
        }
        best
    }
}

fn unit(theta: f64) -> Vec2 {
    Vec2::new(theta.cos(), theta.sin())
}

/// Support function of the Collinear-model image of a compact region, in
/// the chart centred at `base` with `u` along the first axis.
pub fn support_function(r: &ConvexRegion, base: &Point, u: &Vec3) -> Result<f64> {
    r.space().ensure_same(base.space())?;
    let chart = ModelChart::centred_at(base, Some(u))?;
    let b = SampledBoundary::new(r, &chart)?;
    Ok(b.support(&Vec2::new(1.0, 0.0)))
}

/// Length of the longest geodesic segment from `base` in direction `u`
/// that stays in the region; `∞` if the ray never leaves.
pub fn radial_function(r: &ConvexRegion, base: &Point, u: &Vec3) -> Result<f64> {
    r.space().ensure_same(base.space())?;
    if !(r.margin(base) > 0.0) {
        return Err(GeomError::BaseNotInterior);
    }
    let space = r.space();
    let dir = normalize_tangent(space, &project_tangent(base, u)).ok_or(GeomError::DegenerateGeodesic)?;
    let inside = |s: f64| r.margin(&exp(base, &(dir * s))) >= 0.0;
    let cap = match space {
        Space::Sphere => std::f64::consts::PI - 1e-9,
        Space::Euclidean => 1e9,
        Space::Hyperbolic => 36.0,
    };
    let mut hi = 1e-3;
    while inside(hi) {
        if hi >= cap {
            return match space {
                Space::Sphere => Err(GeomError::OutsideModelDomain("open hemisphere about the base")),
                _ => Ok(f64::INFINITY),
            };
        }
        hi = (hi * 2.0).min(cap);
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Hausdorff distance between compact regions, computed as the sup-norm
/// distance of support functions in the Collinear chart centred at the
/// midpoint of the two witnesses.
pub fn hausdorff_distance(a: &ConvexRegion, b: &ConvexRegion) -> Result<f64> {
    a.space().ensure_same(b.space())?;
    let centre = geodesic_point(a.witness(), b.witness(), 0.5)?;
    hausdorff_in_chart(a, b, &ModelChart::centred_at(&centre, None)?)
}

pub(crate) fn hausdorff_in_chart(a: &ConvexRegion, b: &ConvexRegion, chart: &ModelChart) -> Result<f64> {
    let sa = SampledBoundary::new(a, chart)?;
    let sb = SampledBoundary::new(b, chart)?;
    let gap = |theta: f64| {
        let u = unit(theta);
        (sa.support(&u) - sb.support(&u)).abs()
    };
    let n = config::SUPPORT_DIRECTIONS;
    let step = TAU / n as f64;
    let mut vals: Vec<(f64, f64)> = (0..n).map(|i| (i as f64 * step, gap(i as f64 * step))).collect();
    vals.sort_by(|x, y| y.1.total_cmp(&x.1));
    let mut best = vals[0].1;
    for &(theta, _) in vals.iter().take(3) {
        let (_, g) = golden_max(gap, theta - step, theta + step, 40);
        best = best.max(g);
    }
    Ok(best)
}

/// Farthest pair of boundary points.
pub fn diameter_pair(r: &ConvexRegion) -> Result<(Point, Point, f64)> {
    r.require_compact()?;
    let mut samples: Vec<(usize, f64, Point)> = Vec::new();
    let arcs: Vec<CycleArc> = r.boundary_chains().iter().flat_map(|c| c.arcs.iter().copied()).collect();
    let m = config::ARC_SAMPLES;
    for (k, arc) in arcs.iter().enumerate() {
        for i in 0..=m {
            let t = arc.t0 + (arc.t1 - arc.t0) * i as f64 / m as f64;
            samples.push((k, t, arc.cycle.point_at(t)));
        }
    }
    let mut best = (0, 0, -1.0);
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            let d = distance_unchecked(&samples[i].2, &samples[j].2);
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    let (mut ka, mut ta) = (samples[best.0].0, samples[best.0].1);
    let (mut kb, mut tb) = (samples[best.1].0, samples[best.1].1);
    let mut d = best.2;
    // alternating refinement along the two arcs
    for _ in 0..6 {
        let pb = arcs[kb].cycle.point_at(tb);
        let (a, step) = (&arcs[ka], (arcs[ka].t1 - arcs[ka].t0) / m as f64);
        let (t, v) = golden_max(
            |t| distance_unchecked(&a.cycle.point_at(t), &pb),
            (ta - step).max(a.t0),
            (ta + step).min(a.t1),
            48,
        );
        if v > d {
            ta = t;
            d = v;
        }
        let pa = arcs[ka].cycle.point_at(ta);
        let (b, step) = (&arcs[kb], (arcs[kb].t1 - arcs[kb].t0) / m as f64);
        let (t, v) = golden_max(
            |t| distance_unchecked(&b.cycle.point_at(t), &pa),
            (tb - step).max(b.t0),
            (tb + step).min(b.t1),
            48,
        );
        if v > d {
            tb = t;
            d = v;
        }
        std::mem::swap(&mut ka, &mut kb);
        std::mem::swap(&mut ta, &mut tb);
    }
    Ok((arcs[ka].cycle.point_at(ta), arcs[kb].cycle.point_at(tb), d))
}

/// Largest distance between two points of a compact region.
pub fn diameter(r: &ConvexRegion) -> Result<f64> {
    diameter_pair(r).map(|(_, _, d)| d)
}

/// Area of a compact region, by polar integration of the Collinear-model
/// area element about the witness.
pub fn area(r: &ConvexRegion, directions: usize) -> Result<f64> {
    r.require_compact()?;
    let base = *r.witness();
    let space = r.space();
    let (e1, e2) = tangent_frame(&base);
    let mut total = 0.0;
    for i in 0..directions {
        let th = TAU * i as f64 / directions as f64;
        let s = radial_function(r, &base, &(e1 * th.cos() + e2 * th.sin()))?;
        // ∫₀^ρ(s) ρ·w(ρ) dρ for the Collinear area element w
        total += match space {
            Space::Euclidean => s * s / 2.0,
            Space::Hyperbolic => s.cosh() - 1.0,
            Space::Sphere => 1.0 - s.cos(),
        };
    }
    Ok(total * TAU / directions as f64)
}
