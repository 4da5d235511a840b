use thiserror::Error;

/// Errors raised by the laboratory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("bracket endpoints do not straddle a root: gap_lo = {gap_lo:e}, gap_hi = {gap_hi:e}")]
    Bracket { gap_lo: f64, gap_hi: f64 },

    #[error("no + to - sign change of f - F found in ({lo}, {hi})")]
    NoRoot { lo: f64, hi: f64 },

    #[error("critical dimension {crit_dim} does not exceed the hyperbola threshold {threshold}")]
    InconsistentCritDim { crit_dim: f64, threshold: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("singular solution needs Gamma > 0, got {0:e}")]
    GammaNonpositive(f64),

    #[error("shooting not supported: {0}")]
    Parameter(String),

    #[error("radius {r} is not usable on grid [{r_min}, {r_max}]: {reason}")]
    Range {
        r: f64,
        r_min: f64,
        r_max: f64,
        reason: String,
    },

    #[error("radius {r} is too close to the grid ends for the difference stencil")]
    Stencil { r: f64 },

    #[error("test function support is not interior to the grid: {0}")]
    Support(String),

    #[error("fields are not compatible: {0}")]
    FieldMismatch(String),

    #[error("polynomial degree {degree} exceeds the supported maximum {max}")]
    DegreeOverflow { degree: u32, max: u32 },

    #[error("polynomial coefficient overflow")]
    CoefficientOverflow,

    #[error("line {line}, column `{column}`: {message}")]
    Parse {
        line: u64,
        column: String,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, LabError>;
