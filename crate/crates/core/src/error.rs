use thiserror::Error;

use crate::space::Space;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("space mismatch: {0:?} vs {1:?}")]
    SpaceMismatch(Space, Space),

    #[error("geodesic between antipodal or coincident points is not unique")]
    DegenerateGeodesic,

    #[error("angle with a zero-length leg")]
    DegenerateAngle,

    #[error("point lies outside the domain of the {0} model")]
    OutsideModelDomain(&'static str),

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("congruence not supported in {space:?}: {what}")]
    UnsupportedCongruence { space: Space, what: &'static str },

    #[error("cycle kind not supported in {space:?}: {what}")]
    UnsupportedCycle { space: Space, what: &'static str },

    #[error("region constructor not supported in {space:?}: {what}")]
    UnsupportedInSpace { space: Space, what: &'static str },

    #[error("only a convex side can bound a region ({0})")]
    NotConvex(&'static str),

    #[error("unbounded arc cannot be sampled without a clip radius")]
    UnboundedArc,

    #[error("region has empty interior")]
    EmptyInterior,

    #[error("region is not compact")]
    NonCompact,

    #[error("base point is not an interior point of the region")]
    BaseNotInterior,

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("too many constraints: {0} (limit {1})")]
    TooManyConstraints(usize, usize),

    #[error("candidate residual {residual:e} lies within the ambiguity band ({lo:e}, {hi:e}]")]
    AmbiguousNearTolerance { residual: f64, lo: f64, hi: f64 },

    #[error("requested case was not realized after {0} attempts")]
    CaseNotRealized(usize),

    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

impl From<std::io::Error> for GeomError {
    fn from(e: std::io::Error) -> Self {
        GeomError::Io(e.to_string())
    }
}
