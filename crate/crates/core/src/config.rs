//! Numerical tolerances and sampling densities.
//!
//! The constants are the defaults; [`Tolerances`] bundles them so that
//! experiment reports can record exactly which values were in force.

use serde::{Deserialize, Serialize};

/// Quadric drift allowed before `apply` renormalizes a point.
pub const RENORMALIZE_DRIFT: f64 = 1e-12;
/// Point-on-quadric check used by constructors.
pub const POINT_ON_QUADRIC: f64 = 1e-12;
/// `‖mᵀGm − G‖∞` bound for a valid isometry.
pub const FORM_PRESERVATION: f64 = 1e-10;
/// Membership slack for half-domain constraints.
pub const MEMBERSHIP: f64 = 1e-10;
/// Two intersection points closer than twice this are merged into a tangency.
pub const TANGENCY_WINDOW: f64 = 1e-8;
/// Endpoint mismatch allowed when arcs are linked into chains.
pub const CHAIN_CLOSURE: f64 = 1e-9;
/// Minimum inscribed margin for a witness to count as an interior point.
pub const INTERIOR_MARGIN: f64 = 1e-13;
/// Default relative Hausdorff tolerance for congruence verification.
pub const SYMMETRY_TOL: f64 = 1e-6;
/// Outer angles that differ by more than this cannot be matched.
pub const ANGLE_MATCH: f64 = 1e-6;
/// Cap on half-domain constraints per region.
pub const MAX_CONSTRAINTS: usize = 64;
/// Points probed per constraint by the redundancy check.
pub const REDUNDANCY_PROBES: usize = 1000;
/// Directions sampled for support-function sup norms.
pub const SUPPORT_DIRECTIONS: usize = 720;
/// Samples per boundary arc for support and diameter searches.
pub const ARC_SAMPLES: usize = 48;
/// Acceptance threshold (relative to diameter) of the brute-force oracle.
pub const ORACLE_ACCEPT: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub renormalize_drift: f64,
    pub form_preservation: f64,
    pub membership: f64,
    pub tangency_window: f64,
    pub chain_closure: f64,
    pub interior_margin: f64,
    pub symmetry: f64,
    pub angle_match: f64,
    pub max_constraints: usize,
    pub support_directions: usize,
    pub arc_samples: usize,
    pub oracle_accept: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            renormalize_drift: RENORMALIZE_DRIFT,
            form_preservation: FORM_PRESERVATION,
            membership: MEMBERSHIP,
            tangency_window: TANGENCY_WINDOW,
            chain_closure: CHAIN_CLOSURE,
            interior_margin: INTERIOR_MARGIN,
            symmetry: SYMMETRY_TOL,
            angle_match: ANGLE_MATCH,
            max_constraints: MAX_CONSTRAINTS,
            support_directions: SUPPORT_DIRECTIONS,
            arc_samples: ARC_SAMPLES,
            oracle_accept: ORACLE_ACCEPT,
        }
    }
}
