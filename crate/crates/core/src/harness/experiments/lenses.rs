use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use super::super::{trial_rng, ExperimentReport, Placement, TrialRecord};
use crate::error::Result;
use crate::regions::{diameter, ConvexRegion};
use crate::space::{exp, tangent_frame, Space};

/// Leg `h` of a right triangle with hypotenuse `r` and other leg `a`.
fn leg(space: Space, r: f64, a: f64) -> f64 {
    match space {
        Space::Sphere => (r.cos() / a.cos()).acos(),
        Space::Euclidean => (r * r - a * a).sqrt(),
        Space::Hyperbolic => (r.cosh() / a.cosh()).acosh(),
    }
}

/// Lens of two disks whose boundary circles cross at the ends of a chord of
/// length `epsilon` through the origin.
pub fn chord_lens(space: Space, r1: f64, r2: f64, epsilon: f64) -> Result<ConvexRegion> {
    let o = space.origin();
    let (_, e2) = tangent_frame(&o);
    let c1 = exp(&o, &(e2 * -leg(space, r1, epsilon / 2.0)));
    let c2 = exp(&o, &(e2 * leg(space, r2, epsilon / 2.0)));
    ConvexRegion::disk(c1, r1)?.intersect(&ConvexRegion::disk(c2, r2)?)
}

/// Random small-chord lenses with `ε` log-uniform in `[1e-4, 1e-2]`, at
/// random placements: the diameter must stay within `1.05 ε`.
pub fn run_small_lenses(space: Space, trials: usize, seed: u64) -> Result<ExperimentReport> {
    let radii = if space == Space::Sphere { 0.3..1.2 } else { 0.5..1.5 };
    let rows: Vec<Result<TrialRecord>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let epsilon = 10f64.powf(rng.gen_range(-4.0..-2.0));
            let (r1, r2) = (rng.gen_range(radii.clone()), rng.gen_range(radii.clone()));
            let placement = Placement::random(&mut rng, 1.0);
            let lens = chord_lens(space, r1, r2, epsilon)?.placed(&placement.isometry(space)?)?;
            let d = diameter(&lens)?;
            Ok(TrialRecord::new(i, d <= 1.05 * epsilon, "lens", format!("{}: diameter / epsilon {:.6}", space.label(), d / epsilon))
                .with_measures(None, Some(d))
                .with_inputs(json!({ "epsilon": epsilon, "radii": [r1, r2], "placement": placement })))
        })
        .collect();
    Ok(ExperimentReport::new("lenses", seed, rows.into_iter().collect::<Result<_>>()?))
}
