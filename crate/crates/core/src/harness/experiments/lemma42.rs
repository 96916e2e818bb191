use rand::Rng;
use serde_json::json;

use super::super::{trial_rng, Body, ExperimentReport, HalfSpec, PlacementSpec, Scene, TrialRecord};
use super::lemma19::geodesic_half;
use crate::cycles::{CycleParams, ModelXY, Side};
use crate::error::{GeomError, Result};
use crate::regions::ConvexRegion;
use crate::space::model::klein;
use crate::space::{distance, Point, Space};

/// Membership probes per identity.
pub const PROBES: usize = 10_000;
const BOUNDARY_SKIP: f64 = 1e-8;
const PROBE_RADIUS: f64 = 0.97;

fn lerp(a: ModelXY, b: ModelXY, t: f64) -> ModelXY {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

fn hyper(a: ModelXY, b: ModelXY, l: f64) -> HalfSpec {
    HalfSpec { cycle: CycleParams::Hypercycle { through: [a, b], distance: l }, side: Side::Convex }
}

fn neg(p: ModelXY) -> ModelXY {
    [-p[0], -p[1]]
}

/// Base-line data of `K`: the vertical diameter and a chord on the right
/// between the ideal points at angles `−α₁` and `α₂`, both traversed
/// with `K₀` on the left.
struct Lines {
    g1: [ModelXY; 2],
    g2: [ModelXY; 2],
}

impl Lines {
    fn new(alpha1: f64, alpha2: f64) -> Lines {
        let (lo, hi) = ([alpha1.cos(), -alpha1.sin()], [alpha2.cos(), alpha2.sin()]);
        Lines { g1: [[0.0, 0.5], [0.0, -0.5]], g2: [lerp(lo, hi, 0.25), lerp(lo, hi, 0.75)] }
    }

    /// `K`: the hypercycles at distance `l` beyond each base line.
    fn k(&self, l: f64) -> Vec<HalfSpec> {
        vec![hyper(self.g1[1], self.g1[0], l), hyper(self.g2[1], self.g2[0], l)]
    }

    fn k0(&self) -> Vec<HalfSpec> {
        vec![geodesic_half(self.g1[0], self.g1[1]), geodesic_half(self.g2[0], self.g2[1])]
    }
}

fn region(halves: Vec<HalfSpec>, placement: Option<PlacementSpec>) -> Result<ConvexRegion> {
    let s = Scene { space: Space::Hyperbolic, seed: 0, name: None, bodies: vec![Body { halves, placement }] };
    Ok(s.regions()?.remove(0))
}

/// Distance from `z` to a geodesic half-plane region `k0`, through the foot
/// of the perpendicular on the violated side line.
fn distance_to_k0(k0: &ConvexRegion, z: &Point) -> Result<f64> {
    let h = Space::Hyperbolic;
    let mut d: f64 = 0.0;
    for half in k0.halves() {
        if half.margin(z) >= 0.0 {
            continue;
        }
        let n = half.cycle.base_normal().expect("geodesic");
        let n = n / h.inner(&n, &n).sqrt();
        let foot = Point::project(h, z.coords() - n * h.inner(z.coords(), &n))?;
        d = d.max(distance(z, &foot)?);
    }
    Ok(d)
}

fn probe(rng: &mut impl Rng) -> Result<Point> {
    let r = PROBE_RADIUS * rng.gen::<f64>().sqrt();
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    klein(Space::Hyperbolic, r * t.cos(), r * t.sin())
}

/// Two congruent bodies bounded by hypercycles at distance `l`, placed so
/// that the convex sets bounded by one component each share exactly one
/// ideal point. Rows: parallel-domain identity, intersection identity,
/// single ideal point of the intersection.
pub fn build_lemma42(l: f64, seed: u64) -> Result<(Scene, ExperimentReport)> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(GeomError::OutOfRange { what: "hypercycle distance", value: l });
    }
    let mut rng = trial_rng(seed, 0);
    let (alpha1, alpha2) = (rng.gen_range(0.2..1.2), rng.gen_range(0.2..1.2));
    let shift = rng.gen_range(0.3..1.5);
    let lines = Lines::new(alpha1, alpha2);
    let k_halves = lines.k(l);
    // ψ is the point reflection in the centre followed by a parabolic shift about (0, −1)
    let l_halves: Vec<HalfSpec> = k_halves
        .iter()
        .map(|h| match h.cycle {
            CycleParams::Hypercycle { through: [a, b], distance } => {
                hyper(neg(a), neg(b), distance)
            }
            _ => unreachable!(),
        })
        .collect();
    let placement = |s: f64| PlacementSpec::IdealRotation { ideal_angle: -std::f64::consts::FRAC_PI_2, through: [0.0, 0.0], shift: s };

    let k = region(k_halves.clone(), None)?;
    let k1 = region(vec![k_halves[0]], None)?;
    let mut chosen = None;
    for s in [shift, -shift] {
        let l1 = region(vec![l_halves[0]], Some(placement(s)))?;
        if let Ok(m) = k1.intersect(&l1) {
            if m.ideal_point_count() == 1 && m.ideal_boundary().len() == 1 {
                chosen = Some((s, m));
                break;
            }
        }
    }
    let (s, m) = chosen.ok_or(GeomError::CaseNotRealized(2))?;
    let lb = region(l_halves.clone(), Some(placement(s)))?;
    let both = k.intersect(&lb)?;
    let k0 = region(lines.k0(), None)?;

    let (mut agree60, mut skip60, mut agree64, mut skip64) = (0, 0, 0, 0);
    for _ in 0..PROBES {
        let z = probe(&mut rng)?;
        let d = distance_to_k0(&k0, &z)?;
        let mk = k.contains(&z)?;
        if (d - l).abs() < BOUNDARY_SKIP || mk.margin.abs() < BOUNDARY_SKIP {
            skip60 += 1;
        } else if (d <= l) == (mk.margin >= 0.0) {
            agree60 += 1;
        }
        let z = probe(&mut rng)?;
        let (a, b) = (both.contains(&z)?.margin, m.contains(&z)?.margin);
        if a.abs() < BOUNDARY_SKIP || b.abs() < BOUNDARY_SKIP {
            skip64 += 1;
        } else if (a >= 0.0) == (b >= 0.0) {
            agree64 += 1;
        }
    }
    let ideal = both.ideal_point_count();
    let inputs = json!({ "l": l, "alpha1": alpha1, "alpha2": alpha2, "shift": s });
    let rows = vec![
        TrialRecord::new(0, agree60 + skip60 == PROBES, "parallel_domain", format!("l={l}: agree {agree60}, skipped {skip60}"))
            .with_inputs(inputs.clone()),
        TrialRecord::new(1, agree64 + skip64 == PROBES, "intersection_identity", format!("l={l}: agree {agree64}, skipped {skip64}"))
            .with_inputs(inputs.clone()),
        TrialRecord::new(2, ideal == 1 && m.ideal_point_count() == 1, "one_ideal_point", format!("l={l}: ideal points {ideal}"))
            .with_inputs(inputs),
    ];
    let scene = Scene {
        space: Space::Hyperbolic,
        seed,
        name: Some(format!("lemma4.2 l={l}")),
        bodies: vec![Body { halves: k_halves, placement: None }, Body { halves: l_halves, placement: Some(placement(s)) }],
    };
    Ok((scene, ExperimentReport::new("lemma4.2", seed, rows)))
}
