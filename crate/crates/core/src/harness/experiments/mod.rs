//! Experiment drivers. Each returns an [`ExperimentReport`] whose rows can
//! be recomputed from their recorded inputs.

mod curvature;
mod distortion;
pub(crate) mod lemma19;
mod lemma41;
mod lemma42;
mod lenses;
mod theorem2;
mod theorem3;

pub use curvature::run_curvature;
pub use distortion::{measured_distortion, run_distortion, run_tangent_relation};
pub use lemma19::{build_lemma19, run_lemma19, Lemma19Mode, NON_ISOSCELES_MARGIN};
pub use lemma41::{build_lemma41, run_lemma41, Lemma41Case};
pub use lemma42::{build_lemma42, PROBES};
pub use lenses::{chord_lens, run_small_lenses};
pub use theorem2::{disk_pair_trial, run_theorem2, DiskTrial};
pub use theorem3::run_theorem3_cases;

use std::f64::consts::PI;
use std::str::FromStr;

use super::ExperimentReport;
use crate::error::{GeomError, Result};
use crate::space::Space;

/// Experiments reachable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Thm2,
    Thm3,
    Thm4,
    Lemma11,
    Lemma19,
    Lemma41,
    Lemma42,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::Thm2,
        Experiment::Thm3,
        Experiment::Thm4,
        Experiment::Lemma11,
        Experiment::Lemma19,
        Experiment::Lemma41,
        Experiment::Lemma42,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Experiment::Thm2 => "thm2",
            Experiment::Thm3 => "thm3",
            Experiment::Thm4 => "thm4",
            Experiment::Lemma11 => "lemma1.1",
            Experiment::Lemma19 => "lemma1.9",
            Experiment::Lemma41 => "lemma4.1",
            Experiment::Lemma42 => "lemma4.2",
        }
    }
}

impl FromStr for Experiment {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Experiment> {
        Experiment::ALL.into_iter().find(|e| e.id() == s).ok_or_else(|| GeomError::Parse {
            line: 1,
            column: 1,
            msg: format!("unknown experiment `{s}`"),
        })
    }
}

/// Runs an experiment with its standard parameters.
///
/// `thm2` covers all three spaces (sphere radius 0.8, otherwise 1);
/// `thm4` is its hyperbolic part. `lemma1.1` runs the distortion grids
/// and `trials` tangent-relation triangles. `lemma4.1` runs `trials` samples
/// per case, `lemma4.2` one construction per distance in `{0.25, 0.5, 1}`.
pub fn run_experiment(exp: Experiment, trials: usize, seed: u64) -> Result<ExperimentReport> {
    let report = match exp {
        Experiment::Thm2 => run_theorem2(Space::Sphere, 0.8, trials, seed)?
            .merge(run_theorem2(Space::Euclidean, 1.0, trials, seed)?)
            .merge(run_theorem2(Space::Hyperbolic, 1.0, trials, seed)?),
        Experiment::Thm3 => run_theorem3_cases(trials, seed)?,
        Experiment::Thm4 => run_theorem2(Space::Hyperbolic, 1.0, trials, seed)?,
        Experiment::Lemma11 => run_distortion(Space::Hyperbolic, &[0.2, 0.6, 1.0], 64)?
            .merge(run_distortion(Space::Sphere, &[0.3, PI / 4.0, 1.2], 64)?)
            .merge(run_tangent_relation(trials, seed)?),
        Experiment::Lemma19 => run_lemma19(Lemma19Mode::TwoZeroCurvatures, 0.05, trials, seed)?,
        Experiment::Lemma41 => run_lemma41(trials, seed)?,
        Experiment::Lemma42 => {
            let mut acc: Option<ExperimentReport> = None;
            for l in [0.25, 0.5, 1.0] {
                let (_, r) = build_lemma42(l, seed)?;
                acc = Some(match acc {
                    Some(a) => a.merge(r),
                    None => r,
                });
            }
            acc.expect("three distances")
        }
    };
    Ok(ExperimentReport { experiment: exp.id().into(), seed, ..report })
}
