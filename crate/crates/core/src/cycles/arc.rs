use serde::{Deserialize, Serialize};

use super::Cycle;
use crate::error::{GeomError, Result};
use crate::space::model::Vec2;
use crate::space::{distance_unchecked, oriented_angle, direction, Point};

/// End of an arc: a point of the cycle, or the cycle's end at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ArcEnd {
    Finite(Point),
    /// Collinear-model boundary point (`H²`) or unit direction (`E²`).
    Ideal(Vec2),
}

impl ArcEnd {
    pub fn point(&self) -> Option<&Point> {
        match self {
            ArcEnd::Finite(p) => Some(p),
            ArcEnd::Ideal(_) => None,
        }
    }
}

/// The part of `cycle` with parameter in `[t0, t1]`, traversed from `t0` to
/// `t1` when `orientation > 0` and backwards otherwise. Either bound may be
/// infinite for an unbounded cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleArc {
    pub cycle: Cycle,
    pub t0: f64,
    pub t1: f64,
    pub orientation: i8,
}

impl CycleArc {
    pub fn new(cycle: Cycle, t0: f64, t1: f64) -> CycleArc {
        debug_assert!(t0 <= t1);
        CycleArc { cycle, t0, t1, orientation: 1 }
    }

    /// The whole cycle; closed cycles start at parameter 0.
    pub fn full(cycle: Cycle) -> CycleArc {
        match cycle.period() {
            Some(p) => CycleArc::new(cycle, 0.0, p),
            None => CycleArc::new(cycle, f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn reversed(&self) -> CycleArc {
        CycleArc { orientation: -self.orientation, ..*self }
    }

    fn end_at(&self, t: f64) -> ArcEnd {
        if t.is_finite() {
            ArcEnd::Finite(self.cycle.point_at(t))
        } else {
            ArcEnd::Ideal(self.cycle.ideal_end(t.signum()).expect("infinite parameter on an unbounded cycle"))
        }
    }

    pub fn start(&self) -> ArcEnd {
        self.end_at(if self.orientation > 0 { self.t0 } else { self.t1 })
    }

    pub fn end(&self) -> ArcEnd {
        self.end_at(if self.orientation > 0 { self.t1 } else { self.t0 })
    }

    pub fn is_bounded(&self) -> bool {
        self.t0.is_finite() && self.t1.is_finite()
    }

    pub fn length(&self) -> f64 {
        (self.t1 - self.t0) * self.cycle.speed()
    }

    pub fn midpoint(&self) -> Point {
        let t = if self.is_bounded() {
            0.5 * (self.t0 + self.t1)
        } else if self.t0.is_finite() {
            self.t0 + 1.0
        } else if self.t1.is_finite() {
            self.t1 - 1.0
        } else {
            0.0
        };
        self.cycle.point_at(t)
    }

    /// Parameter interval after replacing infinite ends by the parameter
    /// where the cycle leaves the ball of radius `clip` about the origin.
    pub fn clipped_params(&self, clip: f64) -> (f64, f64) {
        let t0 = if self.t0.is_finite() { self.t0 } else { clip_param(&self.cycle, -1.0, clip) };
        let t1 = if self.t1.is_finite() { self.t1 } else { clip_param(&self.cycle, 1.0, clip) };
        (t0, t1.max(t0))
    }
}

fn clip_param(c: &Cycle, sign: f64, clip: f64) -> f64 {
    let o = c.space().origin();
    let dist = |t: f64| distance_unchecked(&o, &c.point_at(t));
    let mut hi = sign;
    let mut n = 0;
    while dist(hi) < clip && n < 200 {
        hi *= 2.0;
        n += 1;
    }
    let mut lo = 0.0;
    if dist(lo) >= clip {
        return lo;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if dist(mid) < clip {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

fn sample_params(arc: &CycleArc, t0: f64, t1: f64, n: usize) -> Result<Vec<Point>> {
    if n < 2 {
        return Err(GeomError::OutOfRange { what: "sample count", value: n as f64 });
    }
    let pts = (0..n).map(|i| {
        let f = i as f64 / (n - 1) as f64;
        let t = if arc.orientation > 0 { t0 + f * (t1 - t0) } else { t1 - f * (t1 - t0) };
        arc.cycle.point_at(t)
    });
    Ok(pts.collect())
}

/// `n ≥ 2` points with uniform intrinsic spacing, from the start of the arc
/// to its end.
pub fn sample_arc(arc: &CycleArc, n: usize) -> Result<Vec<Point>> {
    if !arc.is_bounded() {
        return Err(GeomError::UnboundedArc);
    }
    sample_params(arc, arc.t0, arc.t1, n)
}

/// As [`sample_arc`], with infinite ends cut where the cycle leaves the ball
/// of radius `clip` about the origin.
pub fn sample_arc_clipped(arc: &CycleArc, n: usize, clip: f64) -> Result<Vec<Point>> {
    let (t0, t1) = arc.clipped_params(clip);
    sample_params(arc, t0, t1, n)
}

/// Turning angle per arc length of the geodesic polygon through three
/// samples of `cycle` at spacing `h` around parameter `t`; an estimator of
/// the geodesic curvature that does not consult the kind of the cycle.
pub fn estimate_curvature(cycle: &Cycle, t: f64, h: f64) -> Result<f64> {
    let dt = h / cycle.speed();
    let p0 = cycle.point_at(t - dt);
    let p1 = cycle.point_at(t);
    let p2 = cycle.point_at(t + dt);
    let back = direction(&p1, &p0)?;
    let fwd = direction(&p1, &p2)?;
    let turn = oriented_angle(&p1, &(-back), &fwd);
    let len = 0.5 * (distance_unchecked(&p0, &p1) + distance_unchecked(&p1, &p2));
    Ok(turn / len)
}
