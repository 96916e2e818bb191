//! Cycles described by Collinear-model data, as used in scene files.

use serde::{Deserialize, Serialize};

use super::Cycle;
use crate::error::{GeomError, Result};
use crate::space::model::klein;
use crate::space::{Point, Space, Vec3};

/// Collinear-model coordinates (affine coordinates in `E²`).
pub type ModelXY = [f64; 2];

/// Defining data of a cycle. Points are Collinear-model coordinates;
/// ideal points are given by their polar angle on the model circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CycleParams {
    Circle { centre: ModelXY, radius: f64 },
    Paracycle { ideal_angle: f64, through: ModelXY },
    /// Distance line over the geodesic `through[0] → through[1]`; positive
    /// `distance` puts the curve on the left of that geodesic.
    Hypercycle { through: [ModelXY; 2], distance: f64 },
    /// Either `through` or `point` with a model-plane `direction` angle.
    Geodesic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        through: Option<[ModelXY; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        point: Option<ModelXY>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        direction: Option<f64>,
    },
}

/// A point from Collinear-model (or affine) coordinates.
pub fn model_point(space: Space, xy: ModelXY) -> Result<Point> {
    if !(xy[0].is_finite() && xy[1].is_finite()) {
        return Err(GeomError::InvalidPoint(format!("{xy:?}")));
    }
    klein(space, xy[0], xy[1])
}

/// Builds a cycle from its defining data.
pub fn make_cycle(space: Space, params: &CycleParams) -> Result<Cycle> {
    let hyperbolic_only = |what| {
        if space == Space::Hyperbolic {
            Ok(())
        } else {
            Err(GeomError::UnsupportedCycle { space, what })
        }
    };
    match *params {
        CycleParams::Circle { centre, radius } => Cycle::circle(model_point(space, centre)?, radius),
        CycleParams::Paracycle { ideal_angle, through } => {
            hyperbolic_only("paracycle")?;
            let xi = Vec3::new(ideal_angle.cos(), ideal_angle.sin(), 1.0);
            Cycle::paracycle(&xi, &model_point(space, through)?)
        }
        CycleParams::Hypercycle { through, distance } => {
            hyperbolic_only("hypercycle")?;
            let (a, b) = (model_point(space, through[0])?, model_point(space, through[1])?);
            if distance >= 0.0 {
                Cycle::hypercycle_over(&a, &b, distance)
            } else {
                Cycle::hypercycle_over(&b, &a, -distance)
            }
        }
        CycleParams::Geodesic { through: Some([a, b]), point: None, direction: None } => {
            Cycle::geodesic(&model_point(space, a)?, &model_point(space, b)?)
        }
        CycleParams::Geodesic { through: None, point: Some(p), direction: Some(t) } => {
            // model chords are geodesics, so a short model step fixes the line
            let h = 1e-3 * (1.0 - p[0].hypot(p[1])).clamp(1e-3, 1.0);
            let q = [p[0] + h * t.cos(), p[1] + h * t.sin()];
            Cycle::geodesic(&model_point(space, p)?, &model_point(space, q)?)
        }
        CycleParams::Geodesic { .. } => Err(GeomError::InvalidPoint(
            "geodesic needs either `through` or `point` with `direction`".into(),
        )),
    }
}
