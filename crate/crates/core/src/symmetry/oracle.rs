//! Brute-force congruence search: grids over the rotation and reflection
//! families refined by Nelder–Mead on a boundary-mismatch residual.

use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

use super::{from_witnesses, SymmetryReport, Witness};
use crate::config;
use crate::cycles::sample_arc;
use crate::error::Result;
use crate::optimize::nelder_mead;
use crate::regions::{diameter, ConvexRegion};
use crate::space::{exp, rotate_tangent, tangent_frame, Isometry, Point, Space, Vec3};

const CENTRE_STEPS: i32 = 6;
const ANGLE_STEPS: usize = 48;
const AXIS_ANGLES: usize = 64;
const AXIS_OFFSETS: i32 = 10;
const SEEDS: usize = 24;
/// Mismatch (relative to diameter) after one coarse descent; worse seeds are dropped.
const LOOSE_GATE: f64 = 1e-2;
/// Coarse-sample mismatch a seed must reach before it is refined on the
/// dense samples.
const COARSE_GATE: f64 = 1e-3;

struct Probe<'a> {
    r: &'a ConvexRegion,
    w: Point,
    e1: Vec3,
    e2: Vec3,
    diam: f64,
    coarse: Vec<Point>,
    dense: Vec<Point>,
}

impl Probe<'_> {
    fn mismatch(&self, iso: &Isometry, dense: bool) -> f64 {
        let pts = if dense { &self.dense } else { &self.coarse };
        pts.iter()
            .map(|q| iso.apply(q).map(|p| self.r.margin(&p).abs()).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    fn point(&self, x: f64, y: f64) -> Point {
        exp(&self.w, &(self.e1 * x + self.e2 * y))
    }

    fn rotation(&self, x: &[f64; 3]) -> Isometry {
        Isometry::rotation(&self.point(x[0], x[1]), x[2])
    }

    /// Reflection in the geodesic whose foot from the witness lies at signed
    /// distance `x[1]` in direction `x[0]`.
    fn reflection(&self, x: &[f64; 2]) -> Option<Isometry> {
        let (a, s) = (x[0], x[1]);
        let v = self.e1 * a.cos() + self.e2 * a.sin();
        let (foot, vel) = match self.w.space() {
            Space::Euclidean => (self.point(s * a.cos(), s * a.sin()), v),
            Space::Sphere => (self.point(s * a.cos(), s * a.sin()), -self.w.coords() * s.sin() + v * s.cos()),
            Space::Hyperbolic => (self.point(s * a.cos(), s * a.sin()), self.w.coords() * s.sinh() + v * s.cosh()),
        };
        Isometry::reflection(&foot, &rotate_tangent(&foot, &vel)).ok()
    }
}

fn seeds<const N: usize>(mut scored: Vec<([f64; N], f64)>, sep: [f64; N], limit: f64) -> Vec<[f64; N]> {
    scored.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut out: Vec<[f64; N]> = Vec::new();
    for (x, v) in scored {
        if out.len() == SEEDS || v > limit {
            break;
        }
        if out.iter().all(|y| (0..N).any(|i| (x[i] - y[i]).abs() > sep[i] * 1.01)) {
            out.push(x);
        }
    }
    out
}

fn refine<const N: usize>(
    f: impl Fn(&[f64; N]) -> f64,
    x0: [f64; N],
    step: f64,
    restarts: usize,
    ftol: f64,
) -> ([f64; N], f64) {
    let (mut x, mut v) = nelder_mead(&f, x0, step, 400, ftol);
    let mut s = step * 0.1;
    for _ in 0..restarts {
        let (y, u) = nelder_mead(&f, x, s, 400, ftol);
        if u < v {
            x = y;
            v = u;
        }
        s *= 0.1;
    }
    (x, v)
}

/// Descends on the coarse samples, dropping the seed as soon as it misses a
/// gate, then polishes on the dense samples.
fn staged<const N: usize>(
    f: impl Fn(&[f64; N], bool) -> f64,
    x0: [f64; N],
    step: f64,
    diam: f64,
) -> Option<([f64; N], f64)> {
    let coarse = |x: &[f64; N]| f(x, false);
    let (x, v) = nelder_mead(coarse, x0, step, 200, 1e-4 * diam);
    if v > LOOSE_GATE * diam {
        return None;
    }
    let (x, v) = refine(coarse, x, 0.1 * step, 2, 1e-9 * diam);
    if v > COARSE_GATE * diam {
        return None;
    }
    Some(refine(|x: &[f64; N]| f(x, true), x, 1e-3 * step, 1, 1e-10 * diam))
}

/// Independent brute-force classification, used to validate [`super::classify`].
pub fn oracle_classify(r: &ConvexRegion, tol: f64) -> Result<SymmetryReport> {
    r.require_compact()?;
    let diam = diameter(r)?;
    let w = *r.witness();
    let (e1, e2) = tangent_frame(&w);
    let sample = |n: usize| -> Vec<Point> {
        r.boundary_chains()
            .iter()
            .flat_map(|c| c.arcs.iter())
            .flat_map(|a| sample_arc(a, n).unwrap_or_default())
            .collect()
    };
    let probe = Probe { r, w, e1, e2, diam, coarse: sample(12), dense: sample(64) };
    let accept = config::ORACLE_ACCEPT * diam;
    let h = diam / CENTRE_STEPS as f64;

    // rotations about interior centres, nontrivial angles only
    let centres: Vec<(f64, f64)> = (-CENTRE_STEPS..=CENTRE_STEPS)
        .flat_map(|i| (-CENTRE_STEPS..=CENTRE_STEPS).map(move |j| (i as f64 * h, j as f64 * h)))
        .filter(|&(x, y)| r.margin(&probe.point(x, y)) > -0.5 * h)
        .collect();
    let dth = TAU / ANGLE_STEPS as f64;
    let rot_scored: Vec<([f64; 3], f64)> = centres
        .par_iter()
        .flat_map_iter(|&(x, y)| {
            let probe = &probe;
            (1..ANGLE_STEPS).map(move |k| {
                let p = [x, y, k as f64 * dth];
                (p, probe.mismatch(&probe.rotation(&p), false))
            })
        })
        .collect();
    let rot_seeds = seeds(rot_scored, [h, h, dth], 0.5 * diam);
    let rotations: Vec<(Isometry, f64)> = rot_seeds
        .par_iter()
        .filter_map(|x0| {
            let (x, v) = staged(|x: &[f64; 3], dense| probe.mismatch(&probe.rotation(x), dense), *x0, 0.5 * h.min(dth), diam)?;
            let angle = x[2].rem_euclid(TAU);
            (v <= accept && angle > 0.05 && angle < TAU - 0.05).then(|| (probe.rotation(&x), v))
        })
        .collect();

    // reflections in geodesics meeting the diameter-scale ball
    let da = PI / AXIS_ANGLES as f64;
    let ds = diam / AXIS_OFFSETS as f64;
    let grid: Vec<[f64; 2]> = (0..AXIS_ANGLES)
        .flat_map(|i| (-AXIS_OFFSETS..=AXIS_OFFSETS).map(move |j| [i as f64 * da, j as f64 * ds]))
        .collect();
    let refl_scored: Vec<([f64; 2], f64)> = grid
        .par_iter()
        .filter_map(|x| probe.reflection(x).map(|iso| (*x, probe.mismatch(&iso, false))))
        .collect();
    let refl_seeds = seeds(refl_scored, [da, ds], 0.5 * diam);
    let reflections: Vec<(Isometry, f64)> = refl_seeds
        .par_iter()
        .filter_map(|x0| {
            let probe = &probe;
            let f = |x: &[f64; 2], dense| probe.reflection(x).map_or(f64::INFINITY, |iso| probe.mismatch(&iso, dense));
            let (x, v) = staged(f, *x0, 0.5 * da.min(ds), diam)?;
            if v <= accept {
                probe.reflection(&x).map(|iso| (iso, v))
            } else {
                None
            }
        })
        .collect();

    let mut witnesses = vec![Witness { iso: Isometry::identity(r.space()), residual: 0.0 }];
    // the dense boundary mismatch stands in for the Hausdorff residual
    for (iso, residual) in rotations.into_iter().chain(reflections) {
        witnesses.push(Witness { iso, residual });
    }
    let classification = from_witnesses(r, &witnesses, probe.diam)?;
    let max_residual = witnesses.iter().map(|w| w.residual).fold(0.0, f64::max);
    Ok(SymmetryReport { classification, witnesses, tolerance: tol, diameter: diam, max_residual })
}
