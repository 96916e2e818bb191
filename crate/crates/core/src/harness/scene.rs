//! Scene files: JSON descriptions of placed bodies.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::cycles::{make_cycle, model_point, CycleParams, ModelXY, Side};
use crate::error::{GeomError, Result};
use crate::regions::{Half, IntersectionResult, ConvexRegion};
use crate::space::{CongruenceSpec, Isometry, Space};

/// A congruence in scene coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PlacementSpec {
    Rotation { centre: ModelXY, angle: f64 },
    Translation { from: ModelXY, towards: ModelXY, length: f64 },
    Reflection { a: ModelXY, b: ModelXY },
    PointReflection { centre: ModelXY },
    IdealRotation { ideal_angle: f64, through: ModelXY, shift: f64 },
}

impl PlacementSpec {
    pub fn isometry(&self, space: Space) -> Result<Isometry> {
        let p = |xy: &ModelXY| model_point(space, *xy);
        let spec = match self {
            PlacementSpec::Rotation { centre, angle } => CongruenceSpec::Rotation { centre: p(centre)?, angle: *angle },
            PlacementSpec::Translation { from, towards, length } => {
                CongruenceSpec::Translation { from: p(from)?, towards: p(towards)?, length: *length }
            }
            PlacementSpec::Reflection { a, b } => CongruenceSpec::Reflection { a: p(a)?, b: p(b)? },
            PlacementSpec::PointReflection { centre } => CongruenceSpec::PointReflection { centre: p(centre)? },
            PlacementSpec::IdealRotation { ideal_angle, through, shift } => {
                CongruenceSpec::IdealRotation { ideal_angle: *ideal_angle, through: p(through)?, shift: *shift }
            }
        };
        Isometry::from_spec(space, &spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpec {
    pub cycle: CycleParams,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Body {
    pub halves: Vec<HalfSpec>,
    /// Identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<PlacementSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub space: Space,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub bodies: Vec<Body>,
}

impl Scene {
    pub fn from_json(text: &str) -> Result<Scene> {
        serde_json::from_str(text).map_err(|e| GeomError::Parse { line: e.line(), column: e.column(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    /// Each body as a region, with its placement applied.
    pub fn regions(&self) -> Result<Vec<ConvexRegion>> {
        self.bodies
            .iter()
            .map(|b| {
                let halves = b
                    .halves
                    .iter()
                    .map(|h| Ok(Half { cycle: make_cycle(self.space, &h.cycle)?, side: h.side }))
                    .collect::<Result<Vec<_>>>()?;
                let region = ConvexRegion::from_halves(self.space, halves)?;
                match &b.placement {
                    Some(p) => region.placed(&p.isometry(self.space)?),
                    None => Ok(region),
                }
            })
            .collect()
    }

    /// Intersection of all bodies.
    pub fn intersection(&self) -> Result<IntersectionResult> {
        let regions = self.regions()?;
        let (first, rest) = regions.split_first().ok_or(GeomError::EmptyInterior)?;
        let mut acc = IntersectionResult::from_region(first.clone());
        for r in rest {
            acc = match acc.region() {
                Some(cur) => crate::regions::intersect_regions(cur, r)?,
                None => return Ok(acc),
            };
        }
        Ok(acc)
    }
}

/// Reads and parses a scene file.
pub fn parse_scene(path: impl AsRef<Path>) -> Result<Scene> {
    Scene::from_json(&std::fs::read_to_string(path)?)
}
