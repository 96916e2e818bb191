use rand::Rng;
use rayon::prelude::*;
use serde_json::json;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::super::{trial_rng, ExperimentReport, TrialRecord};
use crate::config::SYMMETRY_TOL;
use crate::error::Result;
use crate::regions::ConvexRegion;
use crate::space::{geodesic_point, Isometry, Point, Vec3};
use crate::symmetry::classify;

fn unit(t: f64) -> Vec3 {
    Vec3::new(t.cos(), t.sin(), 0.0)
}

fn random_point(rng: &mut impl Rng) -> Point {
    Point::euclidean(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Whether `iso` maps the constraint set of `r` onto itself.
fn preserves(r: &ConvexRegion, iso: &Isometry) -> Result<bool> {
    Ok(r.placed(iso)?.same_constraints(r))
}

/// Midline of a strip: the line equidistant from both boundary lines.
fn strip_centre_line(r: &ConvexRegion) -> (Vec3, f64) {
    let a = r.halves()[0].cycle.base_normal().expect("line");
    let b = r.halves()[1].cycle.base_normal().expect("line");
    // both normals are (nx, ny, −d) with a common unit (nx, ny)
    (Vec3::new(a.x, a.y, 0.0), -0.5 * (a.z + b.z))
}

fn strip_strip(rng: &mut impl Rng) -> Result<(bool, String, serde_json::Value)> {
    let (p1, p2) = (random_point(rng), random_point(rng));
    let t1 = rng.gen_range(0.0..PI);
    let t2 = t1 + rng.gen_range(0.3..PI - 0.3);
    let (w1, w2) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
    let s1 = ConvexRegion::strip(&p1, &unit(t1), w1)?;
    let s2 = ConvexRegion::strip(&p2, &unit(t2), w2)?;
    let region = s1.intersect(&s2)?;
    // centre from the constraints: the two midlines meet there
    let (n1, d1) = strip_centre_line(&s1);
    let (n2, d2) = strip_centre_line(&s2);
    let det = n1.x * n2.y - n1.y * n2.x;
    let c = Point::euclidean((d1 * n2.y - d2 * n1.y) / det, (n1.x * d2 - n2.x * d1) / det);
    let exact = preserves(&region, &Isometry::point_reflection(&c))?;
    let rep = classify(&region, SYMMETRY_TOL)?;
    let pass = exact && rep.classification.has_central_symmetry();
    let inputs = json!({ "p1": [p1.coords().x, p1.coords().y], "t1": t1, "w1": w1,
                         "p2": [p2.coords().x, p2.coords().y], "t2": t2, "w2": w2 });
    Ok((pass, format!("{} (exact central: {exact})", rep.classification.label()), inputs))
}

fn wedge(rng: &mut impl Rng) -> Result<(bool, String, serde_json::Value)> {
    let v = random_point(rng);
    let t1 = rng.gen_range(0.0..TAU);
    let opening = rng.gen_range(0.2..PI - 0.2);
    let t2 = t1 + opening;
    // rays from v at angles t1 and t2; the wedge lies between them
    let a = Point::euclidean(v.coords().x + t1.cos(), v.coords().y + t1.sin());
    let b = Point::euclidean(v.coords().x + t2.cos(), v.coords().y + t2.sin());
    let h1 = ConvexRegion::half_plane(&v, &a)?;
    let h2 = ConvexRegion::half_plane(&b, &v)?;
    let region = h1.intersect(&h2)?;
    let bis = Isometry::reflection(&v, &unit(t1 + opening / 2.0))?;
    let exact = preserves(&region, &bis)?;
    let inputs = json!({ "vertex": [v.coords().x, v.coords().y], "t1": t1, "t2": t2 });
    Ok((exact, if exact { "axial" } else { "not_axial" }.to_string(), inputs))
}

fn strip_half_plane(rng: &mut impl Rng) -> Result<(bool, String, serde_json::Value)> {
    let p = random_point(rng);
    let t = rng.gen_range(0.0..TAU);
    let w = rng.gen_range(0.5..2.0);
    // generic angle: keep away from perpendicular and parallel
    let mut g = rng.gen_range(0.25..PI - 0.25);
    if (g - FRAC_PI_2).abs() < 0.1 {
        g += 0.2;
    }
    let strip = ConvexRegion::strip(&p, &unit(t), w)?;
    let q = random_point(rng);
    let q2 = Point::euclidean(q.coords().x + (t + g).cos(), q.coords().y + (t + g).sin());
    let region = strip.intersect(&ConvexRegion::half_plane(&q, &q2)?)?;
    // any congruence permutes the two vertices, so it is one of these
    let v = region.vertices();
    let (a, b) = (v[0].point, v[1].point);
    let m = geodesic_point(&a, &b, 0.5)?;
    let d = crate::space::direction(&a, &b)?;
    let candidates = [
        Isometry::point_reflection(&m),
        Isometry::reflection(&m, &d)?,
        Isometry::reflection(&m, &crate::space::rotate_tangent(&m, &d))?,
    ];
    let mut symmetric = false;
    for c in &candidates {
        symmetric |= preserves(&region, c)?;
    }
    let inputs = json!({ "strip_point": [p.coords().x, p.coords().y], "t": t, "w": w,
                         "line": [[q.coords().x, q.coords().y], [q2.coords().x, q2.coords().y]] });
    Ok((!symmetric && v.len() == 2, if symmetric { "symmetric" } else { "trivial" }.to_string(), inputs))
}

fn circle_with_strip_or_half_plane(rng: &mut impl Rng) -> Result<(bool, String, serde_json::Value)> {
    let c = random_point(rng);
    let r = rng.gen_range(0.5..1.5);
    let disk = ConvexRegion::disk(c, r)?;
    let t = rng.gen_range(0.0..TAU);
    let off = rng.gen_range(-0.5 * r..0.5 * r);
    let foot = Point::euclidean(c.coords().x + off * t.cos(), c.coords().y + off * t.sin());
    let dir = unit(t + FRAC_PI_2);
    let other = if rng.gen_bool(0.5) {
        ConvexRegion::strip(&foot, &dir, rng.gen_range(0.3..1.0) * r)?
    } else {
        let q = Point::euclidean(foot.coords().x + dir.x, foot.coords().y + dir.y);
        ConvexRegion::half_plane(&foot, &q)?
    };
    let region = disk.intersect(&other)?;
    let rep = classify(&region, SYMMETRY_TOL)?;
    let pass = !rep.classification.axes().is_empty();
    Ok((pass, rep.classification.label().to_string(), json!({ "centre": [c.coords().x, c.coords().y], "r": r, "t": t, "offset": off })))
}

/// The `E²` cases, one row each per trial in the order strip∩strip, wedge,
/// strip∩half-plane, circle∩(strip or half-plane).
pub fn run_theorem3_cases(trials: usize, seed: u64) -> Result<ExperimentReport> {
    type Case = fn(&mut rand_chacha::ChaCha8Rng) -> Result<(bool, String, serde_json::Value)>;
    let cases: [(&str, Case); 4] = [
        ("strip_strip", strip_strip),
        ("wedge", wedge),
        ("strip_half_plane", strip_half_plane),
        ("circle_mixed", circle_with_strip_or_half_plane),
    ];
    let rows: Vec<Result<Vec<TrialRecord>>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            cases
                .iter()
                .enumerate()
                .map(|(k, (name, f))| {
                    let (pass, label, inputs) = f(&mut rng)?;
                    Ok(TrialRecord::new(4 * i + k, pass, label, format!("case={name}")).with_inputs(inputs))
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(ExperimentReport::new("thm3", seed, out))
}
