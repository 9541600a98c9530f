use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("non-finite value in {what} at node {node}")]
    NonFinite { what: String, node: usize },

    #[error("unsupported norm exponent {0}; expected 2, 3 or inf")]
    UnsupportedNorm(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("density must be non-negative, got {0}")]
    NegativeDensity(f64),

    #[error("reference density must be positive, got {0}")]
    NonPositiveReferenceDensity(f64),

    #[error("relative pressure term is negative beyond round-off: {0}")]
    NegativeRelativePressure(f64),

    #[error("time step {dt} exceeds the stability limit {limit} ({reason})")]
    Cfl {
        dt: f64,
        limit: f64,
        reason: &'static str,
    },

    #[error("density {value} below floor {floor} at node {node}")]
    DensityFloor { node: usize, value: f64, floor: f64 },

    #[error("non-finite {field} after step at node {node}")]
    NonFiniteState { field: &'static str, node: usize },

    #[error("boundary condition {bc} is incompatible with system {system}")]
    BoundaryMismatch {
        bc: &'static str,
        system: &'static str,
    },

    #[error("remainder terms are defined for mu = lambda = theta = 1")]
    UnnormalizedCoefficients,

    #[error("non-finite remainder term `{0}`")]
    NonFiniteTerm(String),

    #[error("{trajectory} trajectory aborted at t = {time}: {source}")]
    SolverAbort {
        trajectory: &'static str,
        time: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("trace is empty")]
    EmptyTrace,

    #[error("need at least {need} refinement levels, got {got}")]
    TooFewLevels { need: usize, got: usize },

    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("trace format error: {0}")]
    TraceFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("worker pool: {0}")]
    Pool(String),
}

impl Error {
    pub fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            name,
            reason: reason.into(),
        }
    }

    /// True when the error came out of a time-stepping run.
    pub fn is_solver_abort(&self) -> bool {
        matches!(
            self,
            Error::SolverAbort { .. }
                | Error::Cfl { .. }
                | Error::DensityFloor { .. }
                | Error::NonFiniteState { .. }
        )
    }

    /// True for errors caused by the user-provided configuration.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config { .. }
                | Error::InvalidParam { .. }
                | Error::InvalidGrid(_)
                | Error::BoundaryMismatch { .. }
                | Error::TooFewLevels { .. }
        )
    }
}
