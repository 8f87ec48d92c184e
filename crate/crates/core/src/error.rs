use thiserror::Error;

/// Failures raised by estimators and constructors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("koch level {0} out of range (0..=10)")]
    LevelOutOfRange(u32),

    #[error("grid resolution infeasible: cell size {required} needs {cells_per_axis} cells per axis (cap {cap})")]
    ResolutionInfeasible {
        required: f64,
        cells_per_axis: f64,
        cap: u64,
    },

    #[error("scale ordering violated: need 0 < r ({r}) < R ({big_r}) < diam ({diam})")]
    ScaleOrdering { r: f64, big_r: f64, diam: f64 },

    #[error("point ({0}, {1}) is not on the boundary")]
    NotOnBoundary(f64, f64),

    #[error("point ({0}, {1}) is not inside the domain")]
    NotInside(f64, f64),

    #[error("insufficient data: {0}")]
    Insufficient(String),

    #[error("non-finite field value at ({0}, {1})")]
    NonFinite(f64, f64),

    #[error("scaling function is nonpositive at t = {0}")]
    NonPositive(f64),

    #[error("degenerate region: {0}")]
    Degenerate(String),

    #[error("resolution rule violated: {0}")]
    ResolutionRule(String),

    #[error("missing prerequisite: {0}")]
    MissingPrerequisite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
