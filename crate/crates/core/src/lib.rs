//! Convex bodies bounded by cycles in the three constant-curvature planes.
//!
//! The crate is organised bottom-up:
//!
//! | module | contents |
//! |--------|----------|
//! | [`space`] | points, distances, geodesics, angles, congruences, the collinear and conformal models |
//! | [`cycles`] | circles, paracycles, hypercycles and geodesics; curvature, sides, intersections |
//! | [`regions`] | finite intersections of cycle half-domains; boundary chains, support and radial functions, Hausdorff distance |
//! | [`symmetry`] | classification of the congruence group of a compact region, plus a brute-force oracle |
//! | [`harness`] | scene files, reproducible experiments, CSV/JSON reports and SVG rendering |
//!
//! ```
//! use ccgeom::prelude::*;
//!
//! let space = Space::Hyperbolic;
//! let a = ccgeom::space::model::klein(space, -0.2, 0.0)?;
//! let b = ccgeom::space::model::klein(space, 0.2, 0.0)?;
//! let lens = ConvexRegion::disk(a, 1.0)?.intersect(&ConvexRegion::disk(b, 1.0)?)?;
//! let report = classify(&lens, SYMMETRY_TOL)?;
//! assert_eq!(report.classification.label(), "central_and_axial");
//! # Ok::<(), ccgeom::GeomError>(())
//! ```

pub mod config;
pub mod cycles;
pub mod error;
pub mod harness;
pub(crate) mod optimize;
pub mod regions;
pub mod space;
pub mod symmetry;

pub use error::{GeomError, Result};

pub mod prelude {
    pub use crate::config::SYMMETRY_TOL;
    pub use crate::cycles::{Cycle, CycleKind, Side};
    pub use crate::error::{GeomError, Result};
    pub use crate::regions::{ConvexRegion, IntersectionResult};
    pub use crate::space::{distance, Isometry, ModelKind, Point, Space, Vec3};
    pub use crate::symmetry::{classify, oracle_classify, Classification, SymmetryReport};
}

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/models.md")]
    pub mod models {}
    #[doc = include_str!("../../../book/src/cycles.md")]
    pub mod cycles {}
    #[doc = include_str!("../../../book/src/regions.md")]
    pub mod regions {}
    #[doc = include_str!("../../../book/src/symmetry.md")]
    pub mod symmetry {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    pub mod experiments {}
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub mod readme {}
