use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("initial spinor is not normalized: |alpha|^2 + |beta|^2 = {0}")]
    NotNormalized(f64),

    #[error("theta = {0} is forbidden (must lie in [0, 2pi) away from 0, pi/2, pi, 3pi/2)")]
    ForbiddenTheta(f64),

    #[error("{name} must be a positive integer, got {value}")]
    NonPositive { name: &'static str, value: i64 },

    #[error("amplitude field carries no probability mass")]
    EmptyState,

    #[error("eigenvalues of the kick-block matrix coincide (|z2 - z1| = {gap:e})")]
    DegenerateZ { gap: f64 },

    #[error("inverse transform needs at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error(
        "no closed-form limit law for m = {m}, n = {n}: the m >= 3 case is an open problem \
         (supported: usual, m = 1, m = 2)"
    )]
    UnsupportedCase { m: u32, n: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
