use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("resultant variable has degree zero in an operand")]
    DegreeDropped,
    #[error("divisor leading coefficient is too small relative to its norm")]
    IllConditionedDivisor,
    #[error("root finder did not converge (max relative residual {max_residual:e})")]
    NoConvergence { max_residual: f64 },
    #[error("a pole lies inside the maximization domain")]
    Unbounded,

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("no admissible simple point after {0} abscissae")]
    ExhaustedCandidates(usize),
    #[error("curve is not (affine) epsilon-rational")]
    NotEpsRational,
    #[error("degenerate case")]
    Degenerate,
    #[error("adjoint system has dimension {0}, expected 2")]
    WrongDimension(usize),
    #[error("infinity gcd could not be separated by perturbation")]
    CannotSeparate,
    #[error("quotient has degree {0} in the root variable, expected 1")]
    QuotientDegreeUnexpected(usize),
    #[error("parametrization is degenerate (constant coordinate or vanishing resultant)")]
    DegenerateParametrization,

    #[error("parametrization tangent vanishes identically")]
    ZeroTangent,
    #[error("parameter {0} is outside the pencil domain")]
    OutsideDomain(f64),
    #[error("pole {0} of R1 is also a pole of R2")]
    PoleCollision(f64),
    #[error("required supremum is infinite")]
    UnboundedBound,
    #[error("asymptote directions do not match")]
    NotParallel,
    #[error("gradient vanishes at the foot point")]
    SingularFootpoint,
    #[error("no real curve points found on any scanned line")]
    EmptyCurve,
    #[error("pencil coefficients have no finite limit at infinity")]
    NoLimit,
    #[error("no fallback direction stabilizes the anomalous sequence")]
    NoFallbackWorks,

    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
