use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::{min_margin, Boundary, ConvexRegion, Half};
use crate::config;
use crate::cycles::{intersect_cycles, ArcEnd, Cycle, CycleArc};
use crate::space::{oriented_angle, Point};

/// A non-smooth boundary point and its outer angle (π minus the interior angle).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub point: Point,
    pub outer_angle: f64,
}

/// A connected boundary component, traversed with the region on the left.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcChain {
    pub arcs: Vec<CycleArc>,
    /// Index of the constraint each arc comes from.
    pub sources: Vec<usize>,
    pub closed: bool,
    pub vertices: Vec<Vertex>,
}

impl ArcChain {
    /// Sum of outer angles at the vertices.
    pub fn total_outer_angle(&self) -> f64 {
        self.vertices.iter().map(|v| v.outer_angle).sum()
    }

    /// Integral of geodesic curvature along the chain.
    pub fn total_curvature(&self) -> f64 {
        self.arcs.iter().map(|a| a.cycle.curvature() * a.length()).sum()
    }

    /// Largest gap between the end of an arc and the start of its successor.
    pub fn closure_defect(&self) -> f64 {
        let n = self.arcs.len();
        let links = if self.closed { n } else { n.saturating_sub(1) };
        (0..links)
            .map(|i| match (self.arcs[i].end(), self.arcs[(i + 1) % n].start()) {
                (ArcEnd::Finite(p), ArcEnd::Finite(q)) => crate::space::distance_unchecked(&p, &q),
                _ => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    }
}

fn same_point(p: &Point, q: &Point) -> bool {
    let scale = p.coords().amax().max(1.0);
    (p.coords() - q.coords()).amax() <= config::CHAIN_CLOSURE * scale
}

/// Maximal parameter intervals of `c` on which every half in `others` holds.
fn feasible_arcs(c: &Cycle, others: &[Half], cuts: &mut Vec<f64>) -> Vec<CycleArc> {
    cuts.retain(|t| t.is_finite());
    cuts.sort_by(|a, b| a.total_cmp(b));
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-13);
    let inside = |t: f64| min_margin(others, &c.point_at(t)) >= -config::MEMBERSHIP;
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    match c.period() {
        Some(period) => {
            if cuts.is_empty() {
                if inside(0.0) {
                    return vec![CycleArc::new(*c, 0.0, period)];
                }
                return Vec::new();
            }
            let k = cuts.len();
            for i in 0..k {
                let a = cuts[i];
                let b = if i + 1 < k { cuts[i + 1] } else { cuts[0] + period };
                intervals.push((a, b));
            }
            let mut kept: Vec<(f64, f64)> =
                intervals.into_iter().filter(|(a, b)| b > a && inside(0.5 * (a + b))).collect();
            merge(&mut kept);
            // the last interval may continue into the first across the period
            if kept.len() >= 2 {
                let first = kept[0];
                let last = *kept.last().unwrap();
                if (last.1 - (first.0 + period)).abs() <= 1e-13 {
                    kept.pop();
                    kept[0] = (last.0, first.1 + period);
                }
            }
            if kept.len() == 1 && (kept[0].1 - kept[0].0 - period).abs() <= 1e-13 {
                return vec![CycleArc::new(*c, kept[0].0, kept[0].0 + period)];
            }
            kept.into_iter().map(|(a, b)| CycleArc::new(*c, a, b)).collect()
        }
        None => {
            if cuts.is_empty() {
                if inside(0.0) {
                    return vec![CycleArc::full(*c)];
                }
                return Vec::new();
            }
            intervals.push((f64::NEG_INFINITY, cuts[0]));
            for w in cuts.windows(2) {
                intervals.push((w[0], w[1]));
            }
            intervals.push((*cuts.last().unwrap(), f64::INFINITY));
            let probe = |(a, b): (f64, f64)| {
                if a.is_finite() && b.is_finite() {
                    0.5 * (a + b)
                } else if a.is_finite() {
                    a + 1.0
                } else {
                    b - 1.0
                }
            };
            let mut kept: Vec<(f64, f64)> =
                intervals.into_iter().filter(|&iv| iv.1 > iv.0 && inside(probe(iv))).collect();
            merge(&mut kept);
            kept.into_iter().map(|(a, b)| CycleArc::new(*c, a, b)).collect()
        }
    }
}

fn merge(kept: &mut Vec<(f64, f64)>) {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(kept.len());
    for &(a, b) in kept.iter() {
        match out.last_mut() {
            Some(last) if (last.1 - a).abs() <= 1e-13 => last.1 = b,
            _ => out.push((a, b)),
        }
    }
    *kept = out;
}

/// The single feasible interval of a geodesic under extra constraints.
pub(super) fn feasible_arc(c: &Cycle, others: &[Half]) -> Option<CycleArc> {
    let mut cuts = Vec::new();
    for h in others {
        if let Ok(x) = intersect_cycles(c, &h.cycle) {
            cuts.extend(x.points().iter().map(|p| c.param_of(p)));
        }
    }
    feasible_arcs(c, others, &mut cuts).into_iter().next()
}

pub(super) fn build(r: &ConvexRegion) -> Boundary {
    let halves = &r.halves;
    let n = halves.len();
    let oriented: Vec<Cycle> = halves.iter().map(|h| h.oriented()).collect();
    let mut dup = vec![false; n];
    for i in 0..n {
        for j in 0..i {
            if !dup[j] && oriented[i].coincides(&oriented[j]) {
                dup[i] = true;
                break;
            }
        }
    }
    let mut pieces: Vec<(usize, CycleArc)> = Vec::new();
    for i in 0..n {
        if dup[i] {
            continue;
        }
        let c = oriented[i];
        let others: Vec<Half> = (0..n)
            .filter(|&j| j != i && !oriented[j].coincides(&c))
            .map(|j| halves[j])
            .collect();
        let mut cuts = Vec::new();
        for j in 0..n {
            if j == i || dup[j] || oriented[j].coincides(&c) {
                continue;
            }
            if let Ok(x) = intersect_cycles(&c, &oriented[j]) {
                cuts.extend(x.points().iter().map(|p| c.param_of(p)));
            }
        }
        for arc in feasible_arcs(&c, &others, &mut cuts) {
            if arc.length() > config::CHAIN_CLOSURE {
                pieces.push((i, arc));
            }
        }
    }
    let mut redundant = vec![true; n];
    for (i, _) in &pieces {
        redundant[*i] = false;
    }
    Boundary { chains: link(pieces), redundant }
}

fn link(pieces: Vec<(usize, CycleArc)>) -> Vec<ArcChain> {
    let mut used = vec![false; pieces.len()];
    let mut chains = Vec::new();
    // open chains start at an ideal end
    let order: Vec<usize> = (0..pieces.len())
        .filter(|&k| matches!(pieces[k].1.start(), ArcEnd::Ideal(_)))
        .chain(0..pieces.len())
        .collect();
    for k in order {
        if used[k] {
            continue;
        }
        used[k] = true;
        let mut seq = vec![k];
        let mut closed = false;
        loop {
            let last = *seq.last().unwrap();
            let ArcEnd::Finite(end) = pieces[last].1.end() else { break };
            if let ArcEnd::Finite(first) = pieces[seq[0]].1.start() {
                if same_point(&end, &first) {
                    closed = true;
                    break;
                }
            }
            let next = (0..pieces.len()).find(|&m| {
                !used[m] && matches!(pieces[m].1.start(), ArcEnd::Finite(q) if same_point(&end, &q))
            });
            match next {
                Some(m) => {
                    used[m] = true;
                    seq.push(m);
                }
                None => break,
            }
        }
        let arcs: Vec<CycleArc> = seq.iter().map(|&m| pieces[m].1).collect();
        let sources: Vec<usize> = seq.iter().map(|&m| pieces[m].0).collect();
        let vertices = junctions(&arcs, closed);
        chains.push(ArcChain { arcs, sources, closed, vertices });
    }
    chains
}

fn junctions(arcs: &[CycleArc], closed: bool) -> Vec<Vertex> {
    let n = arcs.len();
    let links = if closed { n } else { n.saturating_sub(1) };
    let mut out = Vec::new();
    for i in 0..links {
        let (a, b) = (&arcs[i], &arcs[(i + 1) % n]);
        if closed && n == 1 && a.t1 - a.t0 >= TAU - 1e-12 {
            break;
        }
        let Some(p) = a.end().point().copied() else { continue };
        let tin = a.cycle.tangent_at(a.t1);
        let tout = b.cycle.tangent_at(b.t0);
        let outer = oriented_angle(&p, &tin, &tout);
        if outer.abs() > 1e-7 {
            out.push(Vertex { point: p, outer_angle: outer });
        }
    }
    out
}
