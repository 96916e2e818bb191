use rand::Rng;
use rayon::prelude::*;
use serde_json::json;
use std::f64::consts::{FRAC_PI_2, PI};

use super::super::{trial_rng, ExperimentReport, TrialRecord};
use crate::error::{GeomError, Result};
use crate::space::model::{angle_distortion, angle_distortion_bounds};
use crate::space::{exp, rotate_tangent, tangent_frame, Point, Space, Vec3};

/// Differential of the Collinear chart at `p` applied to the tangent `v`.
fn chart_push(p: &Point, v: &Vec3) -> [f64; 2] {
    let x = p.coords();
    let d = [(v.x * x.z - x.x * v.z) / (x.z * x.z), (v.y * x.z - x.y * v.z) / (x.z * x.z)];
    match p.space() {
        Space::Sphere => [-d[0], -d[1]],
        _ => d,
    }
}

/// Model angle between the images of the outward radial direction and the
/// direction at intrinsic angle `phi` from it, at distance `r` from the centre.
fn image_angle(space: Space, r: f64, phi: f64) -> f64 {
    let o = space.origin();
    let (e1, _) = tangent_frame(&o);
    let p = exp(&o, &(e1 * r));
    // outward radial direction at p
    let out = match space {
        Space::Sphere => -o.coords() * r.sin() + e1 * r.cos(),
        _ => o.coords() * r.sinh() + e1 * r.cosh(),
    };
    let v = out * phi.cos() + rotate_tangent(&p, &out) * phi.sin();
    let (a, b) = (chart_push(&p, &out), chart_push(&p, &v));
    (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1])
}

/// Finite-difference `dΦ′/dΦ` through the Collinear chart.
pub fn measured_distortion(space: Space, r: f64, phi: f64) -> f64 {
    const H: f64 = 1e-4;
    (image_angle(space, r, phi + H) - image_angle(space, r, phi - H)) / (2.0 * H)
}

/// Compares measured and closed-form angle distortion on a grid of apex
/// distances and `Φ ∈ [0, π/2]`; one row per `(space, r)`.
pub fn run_distortion(space: Space, rs: &[f64], phi_points: usize) -> Result<ExperimentReport> {
    if rs.is_empty() || phi_points < 2 {
        return Err(GeomError::OutOfRange { what: "grid size", value: phi_points as f64 });
    }
    let mut rows = Vec::new();
    for (i, &r) in rs.iter().enumerate() {
        let (lo, hi) = angle_distortion_bounds(space, r)?;
        let mut max_err: f64 = 0.0;
        let mut excursion: f64 = 0.0;
        for k in 0..phi_points {
            let phi = FRAC_PI_2 * k as f64 / (phi_points - 1) as f64;
            let m = measured_distortion(space, r, phi);
            max_err = max_err.max((m - angle_distortion(space, r, phi)?).abs());
            excursion = excursion.max(lo - m).max(m - hi);
        }
        let ends = [measured_distortion(space, r, 0.0), measured_distortion(space, r, FRAC_PI_2)];
        let (end_lo, end_hi) = (ends[0].min(ends[1]), ends[0].max(ends[1]));
        let end_err = (end_lo - lo).abs().max((end_hi - hi).abs());
        let pass = max_err <= 1e-6 && end_err <= 1e-4 && excursion <= 1e-9;
        rows.push(
            TrialRecord::new(
                i,
                pass,
                "distortion",
                format!(
                    "{} r={r}: max error {max_err:.2e}, endpoint error {end_err:.2e}, bound excursion {excursion:.2e}",
                    space.label()
                ),
            )
            .with_measures(Some(max_err), None)
            .with_inputs(json!({ "space": space, "r": r, "phi_points": phi_points, "bounds": [lo, hi] })),
        );
    }
    Ok(ExperimentReport::new("lemma1.1", 0, rows))
}

/// Random `H²` triangles `o p q` with `d(o, p) = r`: the Collinear image of
/// the angle at `p` satisfies `tan Φ′ = tan Φ · cosh r`.
pub fn run_tangent_relation(trials: usize, seed: u64) -> Result<ExperimentReport> {
    let space = Space::Hyperbolic;
    let rows: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let r = rng.gen_range(0.1..2.0);
            let dir = rng.gen_range(0.0..2.0 * PI);
            let phi = rng.gen_range(0.05..FRAC_PI_2 - 0.05) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let len = rng.gen_range(0.1..1.5);
            let o = space.origin();
            let u = Vec3::new(dir.cos(), dir.sin(), 0.0);
            let p = exp(&o, &(u * r));
            let out = o.coords() * r.sinh() + u * r.cosh();
            let v = out * phi.cos() + rotate_tangent(&p, &out) * phi.sin();
            let q = exp(&p, &(v * len));
            // model angle at p between the ray away from o and the segment p q
            let m = |x: &Point| {
                let c = x.coords();
                [c.x / c.z, c.y / c.z]
            };
            let (mp, mq) = (m(&p), m(&q));
            let a = mp;
            let b = [mq[0] - mp[0], mq[1] - mp[1]];
            let phi_img = (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1]);
            let lhs = phi_img.tan();
            let rhs = phi.tan() * r.cosh();
            let rel = (lhs - rhs).abs() / rhs.abs();
            TrialRecord::new(i, rel <= 1e-8, "tangent_relation", format!("relative error {rel:.2e}"))
                .with_measures(Some(rel), None)
                .with_inputs(json!({ "r": r, "direction": dir, "phi": phi, "length": len }))
        })
        .collect();
    Ok(ExperimentReport::new("lemma1.1", seed, rows))
}
