use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("operands live on different spaces")]
    SpaceMismatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("site index {index} out of range for {n_sites} atoms")]
    SiteOutOfRange { index: usize, n_sites: usize },

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("space lacks level {0}")]
    MissingLevel(String),

    #[error("space has no cavity mode")]
    NoCavity,

    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("subspace is not invariant under the operator (leakage {0:e})")]
    NotInvariant(f64),

    #[error("parameters are in {found} but {expected} are required")]
    UnitsMismatch { expected: String, found: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("light shifts violate d1 = d3 = -d2/2 (got {0:?})")]
    DeltaConvention([f64; 3]),

    #[error("step size underflow at t = {t} (h = {h:e}); the problem is likely stiff")]
    StepSizeUnderflow { t: f64, h: f64 },

    #[error("integration did not reach t = {target} within {steps} steps (stopped at t = {t})")]
    ToleranceNotMet { t: f64, target: f64, steps: usize },

    #[error("linear solver failed: {0}")]
    Solver(String),

    #[error("state is not normalized (trace {0})")]
    NotNormalized(f64),

    #[error("config error: {0}")]
    Config(String),

    #[error("unknown scenario: {0}")]
    UnknownScenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
