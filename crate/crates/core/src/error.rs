use thiserror::Error;

use crate::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label {0} is not part of the configuration")]
    UnknownLabel(Label),
    #[error("labels must be distinct, {0} repeats")]
    RepeatedLabel(Label),
    #[error("points with labels {0} and {1} coincide")]
    CoincidentPoints(Label, Label),
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("configuration does not affinely span its ambient space")]
    NotFullDimensional,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("{0:?} is not a face of the convex hull")]
    NotAFace(Vec<Label>),
    #[error("label {0} is not a vertex of the convex hull")]
    NotAVertex(Label),
    #[error("configuration is not in convex position (label {0} is not a vertex)")]
    NotConvexPosition(Label),
    #[error("invalid lift spec: {0}")]
    InvalidLiftSpec(String),
    #[error("lifting condition violated at position {position} by hyperplane {hyperplane:?}")]
    ValidationFailed {
        position: usize,
        hyperplane: Vec<Label>,
    },
    #[error("base points {0:?} are affinely dependent, no lexicographic lifting exists")]
    DegenerateBase(Vec<Label>),
    #[error("no affine chart separates the rays at label {0}")]
    NoSeparatingChart(Label),
    #[error("placing step for label {0} is degenerate")]
    DegenerateStep(Label),
    #[error("not a triangulation: {0}")]
    NotATriangulation(String),
    #[error("complex is not pure")]
    NonPureComplex,
    #[error("label {0} is not used by the triangulation")]
    PointUnused(Label),
    #[error("lifting vector is not generic: several cells become flat at t = {0}")]
    GenericityFailure(String),
    #[error("sweep produced a subdivision that is not a triangulation at t = {0}")]
    NonTriangulationSnapshot(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exhausted after {count} results with {frontier} pending")]
    BudgetExceeded { count: usize, frontier: usize },
    #[error("index recovery is not unique: candidates {0:?}")]
    NonUniqueIndex(Vec<Label>),
    #[error("too few points for recovery: {points} base points in dimension {dim}")]
    TooFewPoints { points: usize, dim: usize },
    #[error("neighborliness check failed: {0:?} is not a face")]
    NotNeighborly(Vec<Label>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code, used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownLabel(_) => "unknown_label",
            Error::RepeatedLabel(_) => "repeated_label",
            Error::CoincidentPoints(..) => "coincident_points",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotFullDimensional => "not_full_dimensional",
            Error::OutOfRange(_) => "out_of_range",
            Error::NotAFace(_) => "not_a_face",
            Error::NotAVertex(_) => "not_a_vertex",
            Error::NotConvexPosition(_) => "not_convex_position",
            Error::InvalidLiftSpec(_) => "invalid_lift_spec",
            Error::ValidationFailed { .. } => "validation_failed",
            Error::DegenerateBase(_) => "degenerate_base",
            Error::NoSeparatingChart(_) => "no_separating_chart",
            Error::DegenerateStep(_) => "degenerate_step",
            Error::NotATriangulation(_) => "not_a_triangulation",
            Error::NonPureComplex => "non_pure_complex",
            Error::PointUnused(_) => "point_unused",
            Error::GenericityFailure(_) => "genericity_failure",
            Error::NonTriangulationSnapshot(_) => "non_triangulation_snapshot",
            Error::Precondition(_) => "precondition",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::NonUniqueIndex(_) => "non_unique_index",
            Error::TooFewPoints { .. } => "too_few_points",
            Error::NotNeighborly(_) => "not_neighborly",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
