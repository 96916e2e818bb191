//! Scene files, experiment drivers, reports and rendering.
//!
//! Every randomized experiment draws trial `i` from a ChaCha stream seeded
//! with `seed ^ i`, runs trials in parallel and assembles rows in trial
//! order, so a report depends only on its inputs.

mod corpus;
pub mod experiments;
mod render;
mod report;
mod scene;

pub use corpus::{corpus, CorpusEntry};
pub use experiments::*;
pub use render::{render, render_svg};
pub use report::{intersection_json, symmetry_json, ExperimentReport, TrialRecord, TrialStatus};
pub use scene::{parse_scene, Body, HalfSpec, PlacementSpec, Scene};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::space::{Isometry, Space, Vec3};

/// The random stream of trial `i`.
pub fn trial_rng(seed: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ i as u64)
}

/// A direct congruence: rotation by `angle` about the model centre followed
/// by translation of length `length` along the geodesic through the centre
/// with direction angle `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub angle: f64,
    pub axis: f64,
    pub length: f64,
}

impl Placement {
    pub fn random(rng: &mut impl Rng, max_length: f64) -> Placement {
        Placement {
            angle: rng.gen_range(0.0..std::f64::consts::TAU),
            axis: rng.gen_range(0.0..std::f64::consts::TAU),
            length: rng.gen_range(0.0..max_length),
        }
    }

    pub fn isometry(&self, space: Space) -> Result<Isometry> {
        let o = space.origin();
        let dir = Vec3::new(self.axis.cos(), self.axis.sin(), 0.0);
        let t = Isometry::translation(&o, &dir, self.length)?;
        Ok(t.compose(&Isometry::rotation(&o, self.angle)))
    }
}
