use rayon::prelude::*;
use serde_json::json;
use std::f64::consts::FRAC_PI_2;

use super::super::{trial_rng, ExperimentReport, Placement, TrialRecord};
use crate::config::SYMMETRY_TOL;
use crate::error::{GeomError, Result};
use crate::regions::{intersect_regions, ConvexRegion, IntersectionResult};
use crate::space::Space;
use crate::symmetry::{classify, Classification};

const ATTEMPTS: usize = 100;

/// Outcome of classifying `φK ∩ ψL` for disks `K`, `L` of radii `r1`, `r2`
/// centred at the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum DiskTrial {
    /// The placed disks do not overlap in an open set.
    EmptyInterior,
    /// One disk contains the other.
    Nested,
    Classified { pass: bool, label: String, residual: f64, diameter: f64, axis_residual: f64 },
}

pub fn disk_pair_trial(space: Space, r1: f64, r2: f64, phi: &Placement, psi: &Placement) -> Result<DiskTrial> {
    let o = space.origin();
    let k = ConvexRegion::disk(o, r1)?.placed(&phi.isometry(space)?)?;
    let l = ConvexRegion::disk(o, r2)?.placed(&psi.isometry(space)?)?;
    let region = match intersect_regions(&k, &l)? {
        IntersectionResult::CompactLens { region, .. } => region,
        _ => return Ok(DiskTrial::EmptyInterior),
    };
    if region.redundant().iter().any(|&r| r) {
        return Ok(DiskTrial::Nested);
    }
    let rep = match classify(&region, SYMMETRY_TOL) {
        Ok(rep) => rep,
        Err(GeomError::AmbiguousNearTolerance { residual, .. }) => {
            return Ok(DiskTrial::Classified {
                pass: false,
                label: "ambiguous".into(),
                residual,
                diameter: f64::NAN,
                axis_residual: f64::NAN,
            })
        }
        Err(e) => return Err(e),
    };
    let centres = [k.halves()[0].cycle.centre().expect("disk"), l.halves()[0].cycle.centre().expect("disk")];
    let through = |c: &Classification| {
        c.axes()
            .iter()
            .map(|a| centres.iter().map(|p| a.residual(p)).fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min)
    };
    let axis_residual = through(&rep.classification);
    let congruent = (r1 - r2).abs() < 1e-12;
    let pass = if congruent {
        rep.classification.label() == "central_and_axial" && rep.classification.axes().len() == 2
    } else {
        rep.classification.label() == "axial_only"
            && rep.classification.axes().len() == 1
            && axis_residual <= 1e-6 * rep.diameter
    };
    Ok(DiskTrial::Classified {
        pass,
        label: rep.classification.label().into(),
        residual: rep.max_residual,
        diameter: rep.diameter,
        axis_residual,
    })
}

/// Random overlapping placements of congruent disks of radius `r` and, in
/// the same trial, of disks with radii `r` and `1.3 r`.
pub fn run_theorem2(space: Space, r: f64, trials: usize, seed: u64) -> Result<ExperimentReport> {
    if !(r > 0.0) || (space == Space::Sphere && 1.3 * r > FRAC_PI_2) {
        return Err(GeomError::OutOfRange { what: "disk radius", value: r });
    }
    let rows: Vec<Result<TrialRecord>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let mut parts = Vec::new();
            let mut inputs = Vec::new();
            for r2 in [r, 1.3 * r] {
                let mut found = None;
                for _ in 0..ATTEMPTS {
                    let (phi, psi) = (Placement::random(&mut rng, 2.0 * r), Placement::random(&mut rng, 2.0 * r));
                    match disk_pair_trial(space, r, r2, &phi, &psi)? {
                        DiskTrial::Classified { pass, label, residual, diameter, axis_residual } => {
                            inputs.push(json!({ "radii": [r, r2], "phi": phi, "psi": psi }));
                            found = Some((pass, label, residual, diameter, axis_residual));
                            break;
                        }
                        _ => continue,
                    }
                }
                parts.push(found);
            }
            let (Some(a), Some(b)) = (&parts[0], &parts[1]) else {
                return Ok(TrialRecord::skipped(i, format!("{}: EmptyInterior", space.label())));
            };
            Ok(TrialRecord::new(
                i,
                a.0 && b.0,
                format!("{}|{}", a.1, b.1),
                format!("{}: axis residual {:.2e}", space.label(), b.4),
            )
            .with_measures(Some(a.2.max(b.2)), Some(a.3))
            .with_inputs(json!(inputs)))
        })
        .collect();
    Ok(ExperimentReport::new("thm2", seed, rows.into_iter().collect::<Result<_>>()?))
}
