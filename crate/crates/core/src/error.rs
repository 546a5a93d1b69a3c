use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point has {found} coordinates, polynomial has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),

    #[error("unsupported variable count {0} (expected 1..=3)")]
    UnsupportedNvars(usize),

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("not eliminable: both polynomials are constant in variable z{}", .0 + 1)]
    NotEliminable(usize),

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("matrix with {columns} columns exceeds the window cap of {cap}")]
    WindowOverflow { columns: usize, cap: usize },

    #[error("matrix shapes do not match: {0}")]
    ShapeMismatch(String),

    #[error("joint zero set is not zero-dimensional: {0}")]
    NotZeroDimensional(String),

    #[error("zeros closer than the cluster radius {radius:e}; refine")]
    ClusterAmbiguity { radius: f64 },

    #[error("not Fredholm: {0}")]
    NotFredholm(String),

    #[error("not Fredholm or not certifiable: {0}")]
    NotCertifiable(String),

    #[error("oracle failed: {0}")]
    Oracle(String),

    #[error("symbol nearly vanishes on the contour (min |p| = {min:e})")]
    ContourVanishing { min: f64 },

    #[error("quadrature value {value} is not within 0.25 of an integer")]
    NonIntegerWinding { value: f64 },

    #[error("grid budget exceeded: {needed} cells requested, budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("radius {0} outside the open interval (0, 1)")]
    RadiusOutOfRange(f64),

    #[error("exact factorization failed: {0}")]
    Factorization(String),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
