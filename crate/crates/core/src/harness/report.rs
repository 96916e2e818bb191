//! Experiment reports: one CSV row per trial plus a JSON summary.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::path::Path;

use crate::config::Tolerances;
use crate::error::Result;
use crate::space::model::{to_model, ModelKind};
use crate::regions::{diameter, IntersectionResult};
use crate::space::{IsometryKind, Point, Space};
use crate::symmetry::{Classification, SymmetryReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialStatus {
    Pass,
    Fail,
    Skipped,
}

/// One CSV row. `inputs` is kept out of the CSV and recorded in the JSON
/// summary so that every verdict can be recomputed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub status: TrialStatus,
    pub classification: String,
    pub max_residual: Option<f64>,
    pub diameter: Option<f64>,
    pub notes: String,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub inputs: Value,
}

impl TrialRecord {
    pub fn new(trial: usize, pass: bool, classification: impl Into<String>, notes: impl Into<String>) -> TrialRecord {
        TrialRecord {
            trial,
            status: if pass { TrialStatus::Pass } else { TrialStatus::Fail },
            classification: classification.into(),
            max_residual: None,
            diameter: None,
            notes: notes.into(),
            inputs: Value::Null,
        }
    }

    pub fn skipped(trial: usize, notes: impl Into<String>) -> TrialRecord {
        TrialRecord { status: TrialStatus::Skipped, ..TrialRecord::new(trial, true, "", notes) }
    }

    pub fn with_measures(mut self, max_residual: Option<f64>, diameter: Option<f64>) -> TrialRecord {
        self.max_residual = max_residual;
        self.diameter = diameter;
        self
    }

    pub fn with_inputs(mut self, inputs: Value) -> TrialRecord {
        self.inputs = inputs;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == TrialStatus::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
    pub tolerances: Tolerances,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    trial: usize,
    status: TrialStatus,
    classification: &'a str,
    max_residual: Option<f64>,
    diameter: Option<f64>,
    notes: &'a str,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>, seed: u64, trials: Vec<TrialRecord>) -> ExperimentReport {
        ExperimentReport { experiment: experiment.into(), seed, trials, tolerances: Tolerances::default() }
    }

    /// Appends the rows of `other`, renumbering its trials after ours.
    pub fn merge(mut self, other: ExperimentReport) -> ExperimentReport {
        let offset = self.trials.len();
        self.trials.extend(other.trials.into_iter().map(|mut t| {
            t.trial += offset;
            t
        }));
        self
    }

    pub fn count(&self, status: TrialStatus) -> usize {
        self.trials.iter().filter(|t| t.status == status).count()
    }

    /// All trials pass or are skipped, and at least one passes.
    pub fn verdict(&self) -> bool {
        self.count(TrialStatus::Fail) == 0 && self.count(TrialStatus::Pass) > 0
    }

    pub fn summary(&self) -> Value {
        json!({
            "experiment": self.experiment,
            "seed": self.seed,
            "trials": self.trials.len(),
            "passed": self.count(TrialStatus::Pass),
            "failed": self.count(TrialStatus::Fail),
            "skipped": self.count(TrialStatus::Skipped),
            "verdict": if self.verdict() { "pass" } else { "fail" },
            "tolerances": self.tolerances,
            "records": self.trials,
        })
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for t in &self.trials {
            w.serialize(CsvRow {
                trial: t.trial,
                status: t.status,
                classification: &t.classification,
                max_residual: t.max_residual,
                diameter: t.diameter,
                notes: &t.notes,
            })
            .map_err(|e| crate::GeomError::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| crate::GeomError::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_csv()?)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, serde_json::to_string_pretty(&self.summary()).expect("summary serializes"))?)
    }
}

fn model_xy(p: &Point) -> Value {
    match to_model(p, ModelKind::Collinear) {
        Ok(m) => json!([m.u.x, m.u.y]),
        Err(_) => json!(p.coords().as_slice()),
    }
}

/// JSON form of a symmetry report; points are Collinear-model coordinates
/// and axes are given by their normals.
pub fn symmetry_json(report: &SymmetryReport) -> Value {
    let c = &report.classification;
    let order = match c {
        Classification::Rotational { order, .. } => json!(order),
        Classification::FullDiskGroup { .. } => json!("continuous"),
        Classification::CentralOnly { .. } | Classification::CentralAndAxial { .. } => json!(2),
        _ => json!(1),
    };
    let axes: Vec<Value> = c.axes().iter().map(|a| json!(a.base_normal().expect("axis").as_slice())).collect();
    let hint = c.centre().copied();
    let witnesses: Vec<Value> = report
        .witnesses
        .iter()
        .map(|w| {
            let kind = match hint.map_or(w.iso.kind(&w.iso.space().origin()), |h| w.iso.kind(&h)) {
                IsometryKind::Identity => "identity",
                IsometryKind::Rotation { .. } => "rotation",
                IsometryKind::Reflection { .. } => "reflection",
                IsometryKind::Translation => "translation",
                IsometryKind::IdealRotation => "ideal_rotation",
                IsometryKind::GlideReflection => "glide_reflection",
            };
            json!({ "kind": kind, "residual": w.residual, "matrix": w.iso.matrix().transpose().as_slice() })
        })
        .collect();
    json!({
        "classification": c.label(),
        "order": order,
        "centre": c.centre().map(model_xy),
        "axes": axes,
        "witnesses": witnesses,
        "tolerance": report.tolerance,
        "diameter": report.diameter,
        "max_residual": report.max_residual,
    })
}

/// JSON form of an intersection: its status, vertices in Collinear-model
/// coordinates, and measures of compact results.
pub fn intersection_json(result: &IntersectionResult) -> Result<Value> {
    let mut v = json!({ "status": result.label() });
    match result {
        IntersectionResult::Unbounded { description, .. } => v["description"] = json!(description),
        IntersectionResult::DegenerateChord { segment } => {
            v["segment"] = json!([segment.t0, segment.t1]);
        }
        _ => {}
    }
    if let Some(r) = result.region() {
        v["constraints"] = json!(r.halves().len());
        v["redundant"] = json!(r.redundant());
        v["vertices"] = r
            .vertices()
            .iter()
            .map(|x| json!({ "point": model_xy(&x.point), "outer_angle": x.outer_angle }))
            .collect();
        v["witness"] = model_xy(r.witness());
        if r.is_compact() {
            v["diameter"] = json!(diameter(r)?);
        }
        if r.space() == Space::Hyperbolic {
            v["ideal_points"] = json!(r.ideal_point_count());
        }
    }
    Ok(v)
}
