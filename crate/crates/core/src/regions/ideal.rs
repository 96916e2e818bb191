use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use super::ConvexRegion;
use crate::cycles::{CycleKind, Side};
use crate::space::Space;

/// Closed arc `[start, end]` of the circle at infinity, angles measured in
/// the Collinear model, `0 ≤ start < 2π`, `start ≤ end ≤ start + 2π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdealArc {
    pub start: f64,
    pub end: f64,
}

const POINT_WIDTH: f64 = 1e-9;

impl IdealArc {
    pub fn is_point(&self) -> bool {
        self.end - self.start <= POINT_WIDTH
    }

    fn full() -> IdealArc {
        IdealArc { start: 0.0, end: TAU }
    }

    fn centred(mid: f64, half: f64) -> IdealArc {
        let start = (mid - half).rem_euclid(TAU);
        IdealArc { start, end: start + 2.0 * half }
    }

    fn is_full(&self) -> bool {
        self.end - self.start >= TAU - POINT_WIDTH
    }

    fn intersect(&self, other: &IdealArc) -> Vec<IdealArc> {
        if self.is_full() {
            return vec![*other];
        }
        if other.is_full() {
            return vec![*self];
        }
        let mut out = Vec::new();
        for k in [-1.0, 0.0, 1.0] {
            let (a, b) = (other.start + k * TAU, other.end + k * TAU);
            let lo = self.start.max(a);
            let hi = self.end.min(b);
            if hi >= lo - POINT_WIDTH {
                let lo = lo.min(hi);
                out.push(IdealArc { start: lo.rem_euclid(TAU), end: lo.rem_euclid(TAU) + (hi - lo).max(0.0) });
            }
        }
        out
    }
}

pub(super) fn ideal_boundary(r: &ConvexRegion) -> Vec<IdealArc> {
    if r.space() != Space::Hyperbolic {
        return Vec::new();
    }
    let mut current = vec![IdealArc::full()];
    for h in r.halves() {
        let allowed: Vec<IdealArc> = match h.cycle.kind() {
            CycleKind::Circle { .. } => Vec::new(),
            CycleKind::Paracycle => {
                let xi = h.cycle.ideal_centre().expect("paracycle");
                let a = xi.y.atan2(xi.x).rem_euclid(TAU);
                vec![IdealArc { start: a, end: a }]
            }
            CycleKind::Geodesic => {
                let n = h.cycle.base_normal().expect("geodesic");
                let n = if h.side == Side::Convex { n } else { -n };
                let rho = n.x.hypot(n.y);
                // ⟨n, (cos φ, sin φ, 1)⟩ ≥ 0 ⇔ cos(φ − φ₀) ≥ n₃/ρ
                vec![IdealArc::centred(n.y.atan2(n.x), (n.z / rho).clamp(-1.0, 1.0).acos())]
            }
            CycleKind::Hypercycle { .. } => {
                let n = h.cycle.base_normal().expect("hypercycle");
                let rho = n.x.hypot(n.y);
                vec![IdealArc::centred(n.y.atan2(n.x) + PI, PI - (n.z / rho).clamp(-1.0, 1.0).acos())]
            }
        };
        let mut next = Vec::new();
        for c in &current {
            for a in &allowed {
                next.extend(c.intersect(a));
            }
        }
        current = next;
        if current.is_empty() {
            break;
        }
    }
    current.sort_by(|a, b| a.start.total_cmp(&b.start));
    current.dedup_by(|a, b| (a.start - b.start).abs() <= POINT_WIDTH && (a.end - b.end).abs() <= POINT_WIDTH);
    current
}
