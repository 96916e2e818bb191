use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::f64::consts::FRAC_PI_2;

use super::super::{trial_rng, Body, ExperimentReport, PlacementSpec, Scene, TrialRecord};
use super::lemma19::geodesic_half;
use crate::config::SYMMETRY_TOL;
use crate::cycles::{ModelXY};
use crate::error::{GeomError, Result};
use crate::regions::ConvexRegion;
use crate::space::Space;
use crate::symmetry::classify;

/// Shape of `φK ∩ ψL` after the small opposite rotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma41Case {
    Sector,
    TriangleParallel,
    QuadrangleParallel,
}

impl Lemma41Case {
    pub fn label(self) -> &'static str {
        match self {
            Lemma41Case::Sector => "sector",
            Lemma41Case::TriangleParallel => "triangle_parallel",
            Lemma41Case::QuadrangleParallel => "quadrangle_parallel",
        }
    }
}

const RESAMPLES: usize = 100;

fn lerp(a: ModelXY, b: ModelXY, t: f64) -> ModelXY {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

/// `K` lies right of the vertical diameter and, with a second side, above
/// the chord from `(0, −1)` to angle `theta`; `L` is its mirror image.
fn bodies(case: Lemma41Case, theta: f64, delta: f64) -> Vec<Body> {
    let south = [0.0, -1.0];
    let (east, west) = ([theta.cos(), theta.sin()], [-theta.cos(), theta.sin()]);
    let mut k = vec![geodesic_half([0.0, 0.5], [0.0, -0.5])];
    let mut l = vec![geodesic_half([0.0, -0.5], [0.0, 0.5])];
    if case != Lemma41Case::Sector {
        k.push(geodesic_half(lerp(south, east, 0.25), lerp(south, east, 0.75)));
    }
    if case == Lemma41Case::QuadrangleParallel {
        l.push(geodesic_half(lerp(west, south, 0.25), lerp(west, south, 0.75)));
    }
    vec![
        Body { halves: k, placement: Some(PlacementSpec::Rotation { centre: [0.0, 0.0], angle: -delta }) },
        Body { halves: l, placement: Some(PlacementSpec::Rotation { centre: [0.0, 0.0], angle: delta }) },
    ]
}

/// Whether two side lines, given by their normals, are ultraparallel.
fn ultraparallel(a: &ConvexRegion, i: usize, j: usize) -> bool {
    let n = |k: usize| a.halves()[k].cycle.base_normal().expect("line-bounded");
    let g = Space::Hyperbolic.gram();
    let v = g * n(i).cross(&n(j));
    Space::Hyperbolic.inner(&v, &v) > 1e-9 * v.norm_squared()
}

/// Checks the obstruction to central symmetry for the realized case.
/// Returns `None` when the sample did not realize the case.
fn check(case: Lemma41Case, region: &ConvexRegion) -> Result<Option<(bool, String)>> {
    let vertices = region.vertices().len();
    let ideal_points = region.ideal_point_count();
    Ok(match case {
        Lemma41Case::Sector => {
            (vertices == 1 && !region.is_compact()).then(|| (true, format!("vertices {vertices}, non-compact")))
        }
        Lemma41Case::TriangleParallel => (vertices == 2 && !region.is_compact() && region.redundant().iter().all(|r| !r))
            .then(|| (ideal_points == 1, format!("vertices {vertices}, ideal points {ideal_points}"))),
        Lemma41Case::QuadrangleParallel => {
            if !(region.is_compact() && vertices == 4 && region.redundant().iter().all(|r| !r)) {
                return Ok(None);
            }
            // constraint order is K₁, K₂, L₁, L₂; opposite sides pair K₁ with K₂ and L₁ with L₂
            let opposite_ok = !ultraparallel(region, 0, 1) && !ultraparallel(region, 2, 3);
            let rep = classify(region, SYMMETRY_TOL)?;
            let central = rep.classification.has_central_symmetry();
            Some((
                opposite_ok && !central,
                format!("vertices 4, opposite sides meet or are parallel: {opposite_ok}, {}", rep.classification.label()),
            ))
        }
    })
}

/// Samples a rotation `δ` and a second-side angle `θ` until the case is
/// realized, then verifies its obstruction.
pub fn build_lemma41(case: Lemma41Case, seed: u64) -> Result<(Scene, ExperimentReport)> {
    let (scene, rec) = lemma41_trial(case, seed, 0)?;
    Ok((scene, ExperimentReport::new("lemma4.1", seed, vec![rec])))
}

fn lemma41_trial(case: Lemma41Case, seed: u64, i: usize) -> Result<(Scene, TrialRecord)> {
    let mut rng = trial_rng(seed, i);
    for _ in 0..RESAMPLES {
        let delta = rng.gen_range(0.05..0.3);
        let theta = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
        let scene = Scene {
            space: Space::Hyperbolic,
            seed: seed ^ i as u64,
            name: Some(format!("lemma4.1 {}", case.label())),
            bodies: bodies(case, theta, delta),
        };
        let Some(region) = scene.intersection()?.region().cloned() else { continue };
        if let Some((pass, notes)) = check(case, &region)? {
            let rec = TrialRecord::new(i, pass, case.label(), notes)
                .with_inputs(json!({ "case": case, "delta": delta, "theta": theta }));
            return Ok((scene, rec));
        }
    }
    Err(GeomError::CaseNotRealized(RESAMPLES))
}

/// `trials` samples of each case, rows ordered by case.
pub fn run_lemma41(trials: usize, seed: u64) -> Result<ExperimentReport> {
    let cases = [Lemma41Case::Sector, Lemma41Case::TriangleParallel, Lemma41Case::QuadrangleParallel];
    let rows: Vec<Result<TrialRecord>> = (0..3 * trials)
        .into_par_iter()
        .map(|i| lemma41_trial(cases[i / trials], seed, i).map(|(_, r)| r))
        .collect();
    Ok(ExperimentReport::new("lemma4.1", seed, rows.into_iter().collect::<Result<_>>()?))
}
