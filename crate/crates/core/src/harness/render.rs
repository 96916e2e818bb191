//! SVG drawings of scenes in the Collinear or conformal model.

use std::fmt::Write;
use std::path::Path;

use super::Scene;
use crate::config::SYMMETRY_TOL;
use crate::cycles::{sample_arc_clipped, Cycle, CycleArc};
use crate::error::{GeomError, Result};
use crate::regions::ConvexRegion;
use crate::space::model::{to_model, ModelKind};
use crate::space::{Point, Space};
use crate::symmetry::classify;

const SAMPLES: usize = 96;
const COLOURS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn clip(space: Space) -> f64 {
    match space {
        Space::Hyperbolic => 7.0,
        _ => 12.0,
    }
}

fn model_xy(p: &Point, model: ModelKind) -> Result<[f64; 2]> {
    let m = to_model(p, model)?;
    Ok([m.u.x, m.u.y])
}

/// Model polylines of the boundary of `r`; fails if any boundary point has
/// no image in the model.
fn boundary_paths(r: &ConvexRegion, model: ModelKind) -> Result<Vec<Vec<[f64; 2]>>> {
    let mut paths = Vec::new();
    for chain in r.boundary_chains() {
        let mut path = Vec::new();
        for arc in &chain.arcs {
            for p in sample_arc_clipped(arc, SAMPLES, clip(r.space()))? {
                path.push(model_xy(&p, model)?);
            }
        }
        if chain.closed {
            if let Some(&first) = path.first() {
                path.push(first);
            }
        }
        paths.push(path);
    }
    Ok(paths)
}

/// Model polylines of a whole cycle, split where it leaves the model.
fn cycle_paths(c: &Cycle, model: ModelKind) -> Vec<Vec<[f64; 2]>> {
    let arc = match c.period() {
        Some(p) => CycleArc::new(*c, 0.0, p),
        None => CycleArc::full(*c),
    };
    let mut paths = vec![Vec::new()];
    for p in sample_arc_clipped(&arc, 4 * SAMPLES, clip(c.space())).unwrap_or_default() {
        match model_xy(&p, model) {
            Ok(xy) if xy[0].hypot(xy[1]) < 1e3 => paths.last_mut().expect("nonempty").push(xy),
            _ => paths.push(Vec::new()),
        }
    }
    paths.retain(|p| p.len() > 1);
    paths
}

fn polyline(out: &mut String, path: &[[f64; 2]], style: &str) {
    let pts: Vec<String> = path.iter().map(|p| format!("{:.6},{:.6}", p[0], -p[1])).collect();
    let _ = writeln!(out, r#"<polyline points="{}" {style} vector-effect="non-scaling-stroke"/>"#, pts.join(" "));
}

/// SVG text of the scene: the model disk (for `H²`), each body boundary,
/// the intersection with its vertices, and detected axes and centre.
pub fn render_svg(scene: &Scene, model: ModelKind) -> Result<String> {
    let regions = scene.regions()?;
    let inter = scene.intersection()?;
    let mut body_paths = Vec::new();
    for r in &regions {
        body_paths.push(boundary_paths(r, model)?);
    }
    let inter_paths = match inter.region() {
        Some(r) => boundary_paths(r, model)?,
        None => Vec::new(),
    };

    let half = match scene.space {
        Space::Hyperbolic => 1.05,
        _ => {
            let pts = inter_paths.iter().chain(body_paths.iter().flatten()).flatten();
            let m = pts.fold(0.0f64, |m, p| m.max(p[0].abs()).max(p[1].abs()));
            if m > 0.0 {
                (1.1 * m).min(20.0)
            } else {
                2.0
            }
        }
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="640" height="640">"#,
        -half,
        -half,
        2.0 * half,
        2.0 * half
    );
    if let Some(name) = &scene.name {
        let _ = writeln!(out, "<title>{name}</title>");
    }
    if scene.space == Space::Hyperbolic {
        let _ = writeln!(out, r##"<circle cx="0" cy="0" r="1" fill="none" stroke="#444" stroke-width="1" vector-effect="non-scaling-stroke"/>"##);
    }
    for (i, paths) in body_paths.iter().enumerate() {
        let style = format!(r#"fill="none" stroke="{}" stroke-width="1.5""#, COLOURS[i % COLOURS.len()]);
        for p in paths {
            polyline(&mut out, p, &style);
        }
    }
    for p in &inter_paths {
        polyline(&mut out, p, r##"fill="#ffbf0040" stroke="#000" stroke-width="2""##);
    }
    let dot = half / 150.0;
    if let Some(r) = inter.region() {
        for v in r.vertices() {
            let [x, y] = model_xy(&v.point, model)?;
            let _ = writeln!(out, r#"<circle cx="{x:.6}" cy="{:.6}" r="{dot:.6}" fill="black"/>"#, -y);
        }
        if r.is_compact() {
            if let Ok(rep) = classify(r, SYMMETRY_TOL) {
                for axis in rep.classification.axes() {
                    for p in cycle_paths(axis, model) {
                        polyline(&mut out, &p, r##"fill="none" stroke="#888" stroke-width="1" stroke-dasharray="4 3""##);
                    }
                }
                if let Some(c) = rep.classification.centre() {
                    let [x, y] = model_xy(c, model)?;
                    let _ = writeln!(out, r##"<circle cx="{x:.6}" cy="{:.6}" r="{:.6}" fill="#d62728"/>"##, -y, 1.5 * dot);
                }
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Writes [`render_svg`] to `path`.
pub fn render(scene: &Scene, model: ModelKind, path: impl AsRef<Path>) -> Result<()> {
    let svg = render_svg(scene, model)?;
    std::fs::write(path, svg).map_err(GeomError::from)
}
