use rand::Rng;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

use super::super::{trial_rng, ExperimentReport, TrialRecord};
use crate::cycles::{estimate_curvature, Cycle};
use crate::error::Result;
use crate::space::model::klein;
use crate::space::{Point, Space};

/// Turning-angle curvature estimates against the closed-form table, `draws`
/// random cycles per kind.
pub fn run_curvature(draws: usize, seed: u64) -> Result<ExperimentReport> {
    const KINDS: [&str; 8] =
        ["S2 circle", "E2 circle", "H2 circle", "H2 paracycle", "H2 hypercycle", "S2 geodesic", "E2 line", "H2 line"];
    let rows: Vec<Result<TrialRecord>> = (0..KINDS.len() * draws)
        .into_par_iter()
        .map(|i| {
            let kind = KINDS[i / draws];
            let mut rng = trial_rng(seed, i);
            let h = Space::Hyperbolic;
            let x = rng.gen_range(-0.3..0.3);
            let y = rng.gen_range(-0.3..0.3);
            let (cycle, exact) = match kind {
                "S2 circle" => {
                    let r = rng.gen_range(0.1..FRAC_PI_2 - 0.01);
                    (Cycle::circle(klein(Space::Sphere, x, y)?, r)?, 1.0 / r.tan())
                }
                "E2 circle" => {
                    let r = rng.gen_range(0.1..5.0);
                    (Cycle::circle(Point::euclidean(x, y), r)?, 1.0 / r)
                }
                "H2 circle" => {
                    let r = rng.gen_range(0.1..3.0);
                    (Cycle::circle(klein(h, x, y)?, r)?, 1.0 / r.tanh())
                }
                "H2 paracycle" => (Cycle::paracycle_at(h, rng.gen_range(0.0..2.0 * PI), rng.gen_range(-1.0..1.0))?, 1.0),
                "H2 hypercycle" => {
                    let l = rng.gen_range(0.05..2.0);
                    let t = rng.gen_range(0.0..PI);
                    let b = klein(h, x + 0.3 * t.cos(), y + 0.3 * t.sin())?;
                    (Cycle::hypercycle_over(&klein(h, x, y)?, &b, l)?, l.tanh())
                }
                "S2 geodesic" => (Cycle::geodesic(&klein(Space::Sphere, x, y)?, &klein(Space::Sphere, y, -x + 0.5)?)?, 0.0),
                "E2 line" => (Cycle::geodesic(&Point::euclidean(x, y), &Point::euclidean(y, 1.0 - x))?, 0.0),
                _ => (Cycle::geodesic(&klein(h, x, y)?, &klein(h, y, 0.5 - x)?)?, 0.0),
            };
            let t = rng.gen_range(0.0..2.0 * PI);
            let step = 1e-3 / exact.max(1.0);
            let est = estimate_curvature(&cycle, t, step)?;
            let err = (est - exact).abs();
            Ok(TrialRecord::new(i, err <= 1e-3, kind, format!("estimate {est:.9}, table {exact:.9}"))
                .with_measures(Some(err), None))
        })
        .collect();
    Ok(ExperimentReport::new("curvature", seed, rows.into_iter().collect::<Result<_>>()?))
}
