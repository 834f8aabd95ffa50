use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("variable count mismatch: expected {expected}, got {got}")]
    VariableCount { expected: usize, got: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("degree cap {cap} exceeded (reached degree {reached})")]
    DegreeCap { cap: u32, reached: u32 },

    #[error("computation cancelled")]
    Cancelled,

    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),

    #[error("mixed degrees: expected every form in degree {expected}, found degree {found}")]
    MixedDegrees { expected: u32, found: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ideal is not saturated; saturate it first")]
    Unsaturated,

    #[error("point sampling unavailable: {0}")]
    SamplingUnavailable(String),

    #[error("point lies on the base scheme of the system")]
    PointOnBaseScheme,

    #[error("points coincide in projective space")]
    CoincidentPoints,

    #[error("the quadric system is empty (no degree-2 forms vanish on the variety)")]
    EmptySystem,

    #[error("desk-scale cap exceeded: {0}")]
    CapExceeded(String),

    #[error("divisor classes live on different spaces ({0} vs {1})")]
    SpaceMismatch(String, String),

    #[error("field error: {0}")]
    Field(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    /// Stable machine-readable identifier used in CLI reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingMismatch(_) => "ring_mismatch",
            Error::VariableCount { .. } => "variable_count",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::DegreeCap { .. } => "degree_cap",
            Error::Cancelled => "cancelled",
            Error::Inhomogeneous(_) => "inhomogeneous",
            Error::MixedDegrees { .. } => "mixed_degrees",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Unsaturated => "unsaturated",
            Error::SamplingUnavailable(_) => "sampling_unavailable",
            Error::PointOnBaseScheme => "point_on_base_scheme",
            Error::CoincidentPoints => "coincident_points",
            Error::EmptySystem => "empty_system",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::SpaceMismatch(..) => "space_mismatch",
            Error::Field(_) => "field",
            Error::Parse { .. } => "parse",
        }
    }

    /// True for errors caused by hitting a resource guardrail.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::DegreeCap { .. } | Error::CapExceeded(_) | Error::Cancelled)
    }
}
