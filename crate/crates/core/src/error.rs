use thiserror::Error;

/// Errors raised anywhere in the quadrature engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma function pole at argument {0}")]
    Pole(f64),

    #[error("precision context mismatch: {left} vs {right} digits")]
    ContextMismatch { left: u32, right: u32 },

    #[error("loss of precision: recurrence coefficient beta_{k} is not positive")]
    PrecisionFailure { k: usize },

    #[error("nonpositive quadrature weight at index {index}")]
    NonPositiveWeight { index: usize },

    #[error("invalid parameters: {0}")]
    InvalidSpec(String),

    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    Eigen(usize),

    #[error("integrand is not analytic near the origin: {0}")]
    NonAnalytic(String),

    #[error("missing Taylor data: {0}")]
    MissingDerivatives(String),

    #[error("no convergence: {0}")]
    Convergence(String),

    #[error("singular linear system")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
