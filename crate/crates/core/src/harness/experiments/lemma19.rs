use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::super::{trial_rng, Body, ExperimentReport, HalfSpec, Scene, TrialRecord};
use crate::config::SYMMETRY_TOL;
use crate::cycles::{CycleParams, ModelXY, Side};
use crate::error::{GeomError, Result};
use crate::regions::{diameter, hausdorff_distance, ConvexRegion};
use crate::space::model::klein;
use crate::space::{distance, Space};
use crate::symmetry::{classify, oracle_classify};

/// Boundary type of the body `K` in the small-quadrangle construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma19Mode {
    /// Two parallel lines.
    TwoZeroCurvatures,
    /// Two hypercycles of small distance over parallel lines.
    InfimumZero,
}

/// Minimum required `|d(x₁′, y₁′) − d(x₂′, y₂′)|`, in units of `ε`.
pub const NON_ISOSCELES_MARGIN: f64 = 0.05;
const MAX_SHIFT: f64 = 0.1;
const RESAMPLES: usize = 1000;

pub(crate) fn geodesic_half(a: ModelXY, b: ModelXY) -> HalfSpec {
    HalfSpec { cycle: CycleParams::Geodesic { through: Some([a, b]), point: None, direction: None }, side: Side::Convex }
}

/// The lines `k₁`, `k₂` through the ideal point `(1, 0)` and `(0, ±h)`,
/// and their Collinear points at parameter `t`.
struct Quadrangle {
    h: f64,
}

impl Quadrangle {
    fn k(&self, i: usize, t: f64) -> ModelXY {
        let y = self.h * (1.0 - t);
        [t, if i == 0 { y } else { -y }]
    }

    fn k_body(&self, mode: Lemma19Mode, c: f64) -> Body {
        let h = self.h;
        let halves = match mode {
            Lemma19Mode::TwoZeroCurvatures => vec![geodesic_half([0.5, h / 2.0], [0.0, h]), geodesic_half([0.0, -h], [0.5, -h / 2.0])],
            Lemma19Mode::InfimumZero => vec![
                HalfSpec { cycle: CycleParams::Hypercycle { through: [[0.0, h], [0.5, h / 2.0]], distance: c }, side: Side::Convex },
                HalfSpec { cycle: CycleParams::Hypercycle { through: [[0.5, -h / 2.0], [0.0, -h]], distance: c }, side: Side::Convex },
            ],
        };
        Body { halves, placement: None }
    }

    /// `L` through `x_i` at parameters `tx` and `y_i` at parameters `ty`.
    fn l_body(&self, tx: [f64; 2], ty: [f64; 2]) -> Body {
        let (x1, x2) = (self.k(0, tx[0]), self.k(1, tx[1]));
        let (y1, y2) = (self.k(0, ty[0]), self.k(1, ty[1]));
        Body { halves: vec![geodesic_half(x2, x1), geodesic_half(y1, y2)], placement: None }
    }

    fn legs(&self, tx: [f64; 2], ty: [f64; 2]) -> Result<[f64; 2]> {
        let p = |xy: ModelXY| klein(Space::Hyperbolic, xy[0], xy[1]);
        Ok([
            distance(&p(self.k(0, tx[0]))?, &p(self.k(0, ty[0]))?)?,
            distance(&p(self.k(1, tx[1]))?, &p(self.k(1, ty[1]))?)?,
        ])
    }
}

fn scene(name: &str, seed: u64, bodies: Vec<Body>) -> Scene {
    Scene { space: Space::Hyperbolic, seed, name: Some(name.into()), bodies }
}

fn region_of(scene: &Scene) -> Result<ConvexRegion> {
    scene.intersection()?.region().cloned().ok_or(GeomError::EmptyInterior)
}

/// The symmetric quadrangle must be axial about the `x`-axis only.
fn base_record(mode: Lemma19Mode, epsilon: f64, seed: u64) -> Result<(Scene, TrialRecord)> {
    let q = Quadrangle { h: epsilon / 4.0 };
    let e = epsilon / 4.0;
    let s = scene("lemma1.9 base", seed, vec![q.k_body(mode, 0.2 * epsilon), q.l_body([e, e], [-e, -e])]);
    let region = region_of(&s)?;
    let rep = classify(&region, SYMMETRY_TOL)?;
    let axis_ok = rep.classification.axes().iter().any(|a| {
        a.base_normal().is_some_and(|n| n.x.abs() < 1e-9 && n.z.abs() < 1e-9 && n.y.abs() > 0.5)
    });
    let mut pass = rep.classification.label() == "axial_only" && rep.classification.axes().len() == 1 && axis_ok;
    let mut notes = format!("base: {}", rep.classification.label());
    if mode == Lemma19Mode::InfimumZero {
        let lines = region_of(&scene("lines", seed, vec![q.k_body(Lemma19Mode::TwoZeroCurvatures, 0.0), q.l_body([e, e], [-e, -e])]))?;
        let dh = hausdorff_distance(&region, &lines)?;
        let diam = diameter(&region)?;
        pass &= dh <= 3.0 * epsilon && diam <= 3.0 * epsilon;
        notes += &format!(", hausdorff to line quadrangle {dh:.3e}, diameter {diam:.3e}");
    }
    let rec = TrialRecord::new(0, pass, rep.classification.label(), notes)
        .with_measures(Some(rep.max_residual), Some(rep.diameter))
        .with_inputs(json!({ "mode": mode, "epsilon": epsilon, "perturbation": null }));
    Ok((s, rec))
}

/// Slides the sample points along `k_i` by at most `0.1 ε` until the leg
/// gap reaches the non-isosceles margin.
fn sample_perturbation(q: &Quadrangle, epsilon: f64, rng: &mut impl Rng) -> Result<([f64; 2], [f64; 2], f64)> {
    let e = epsilon / 4.0;
    for _ in 0..RESAMPLES {
        let mut d = || rng.gen_range(-MAX_SHIFT..MAX_SHIFT) * epsilon;
        let (tx, ty) = ([e + d(), e + d()], [-e + d(), -e + d()]);
        let legs = q.legs(tx, ty)?;
        let gap = (legs[0] - legs[1]).abs();
        if gap >= NON_ISOSCELES_MARGIN * epsilon {
            return Ok((tx, ty, gap));
        }
    }
    Err(GeomError::CaseNotRealized(RESAMPLES))
}

/// A generic line quadrangle of the construction, for the oracle corpus.
pub(crate) fn perturbed_quadrangle(epsilon: f64, rng: &mut impl Rng) -> Result<ConvexRegion> {
    let q = Quadrangle { h: epsilon / 4.0 };
    let (tx, ty, _) = sample_perturbation(&q, epsilon, rng)?;
    region_of(&scene("quadrangle", 0, vec![q.k_body(Lemma19Mode::TwoZeroCurvatures, 0.0), q.l_body(tx, ty)]))
}

/// One generic perturbation; both classifiers must say trivial.
fn perturbed_record(mode: Lemma19Mode, epsilon: f64, seed: u64, i: usize) -> Result<(Scene, TrialRecord)> {
    let q = Quadrangle { h: epsilon / 4.0 };
    let mut rng = trial_rng(seed, i);
    let (tx, ty, gap) = sample_perturbation(&q, epsilon, &mut rng)?;
    let s = scene("lemma1.9 perturbed", seed ^ i as u64, vec![q.k_body(mode, 0.2 * epsilon), q.l_body(tx, ty)]);
    let region = region_of(&s)?;
    let rep = classify(&region, SYMMETRY_TOL)?;
    let oracle = oracle_classify(&region, SYMMETRY_TOL)?;
    let pass = rep.classification.label() == "trivial" && oracle.classification.label() == "trivial";
    let rec = TrialRecord::new(i, pass, rep.classification.label(), format!("leg gap {gap:.3e}, oracle {}", oracle.classification.label()))
        .with_measures(Some(rep.max_residual), Some(rep.diameter))
        .with_inputs(json!({ "mode": mode, "epsilon": epsilon, "tx": tx, "ty": ty }));
    Ok((s, rec))
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 0.1 {
        Ok(())
    } else {
        Err(GeomError::OutOfRange { what: "epsilon", value: epsilon })
    }
}

/// The symmetric quadrangle and one seeded generic perturbation. Returns
/// the perturbed scene.
pub fn build_lemma19(mode: Lemma19Mode, epsilon: f64, seed: u64) -> Result<(Scene, ExperimentReport)> {
    check_epsilon(epsilon)?;
    let (_, base) = base_record(mode, epsilon, seed)?;
    let (s, mut rec) = perturbed_record(mode, epsilon, seed, 0)?;
    rec.trial = 1;
    Ok((s, ExperimentReport::new("lemma1.9", seed, vec![base, rec])))
}

/// Row 0 is the symmetric quadrangle, rows `1..=trials` are perturbations;
/// in hypercycle mode the base row also checks the distance to the line
/// quadrangle.
pub fn run_lemma19(mode: Lemma19Mode, epsilon: f64, trials: usize, seed: u64) -> Result<ExperimentReport> {
    check_epsilon(epsilon)?;
    let (_, base) = base_record(mode, epsilon, seed)?;
    let rows: Vec<Result<TrialRecord>> = (1..=trials)
        .into_par_iter()
        .map(|i| perturbed_record(mode, epsilon, seed, i).map(|(_, r)| r))
        .collect();
    let mut all = vec![base];
    for r in rows {
        all.push(r?);
    }
    Ok(ExperimentReport::new("lemma1.9", seed, all))
}
