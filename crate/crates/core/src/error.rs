use num_complex::Complex64;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ambient degree {ambient} is smaller than polynomial degree {degree}")]
    DimensionMismatch { ambient: usize, degree: usize },

    #[error("leading coefficient must be nonzero")]
    ZeroLeading,

    #[error("operator degree must be at least 1")]
    ZeroDegree,

    #[error("operator is degenerate: U(z) vanishes identically")]
    DegenerateOperator,

    #[error("U(z) has zero {zero} outside |z| <= |z - n/2| (margin {margin:e})")]
    InvalidOperator { zero: Complex64, margin: f64 },

    #[error("polynomial degree {degree} exceeds operator degree {n}")]
    DegreeOverflow { degree: usize, n: usize },

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("radius must be positive, got {0}")]
    InvalidRadius(f64),

    #[error("root finding needs degree >= 1")]
    ConstantPolynomial,

    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unknown statement id `{0}`")]
    UnknownStatement(String),

    #[error("statement `{0}` has no extremal family")]
    NoExtremalFamily(String),

    #[error("rejection sampling exceeded {0} draws")]
    RejectionCap(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
