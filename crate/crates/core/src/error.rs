use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// The (a, c) pair violates the inequality an operation relies on.
    #[error("parameter regime violated for a = {a}, c = {c}: requires {condition}")]
    Regime {
        a: f64,
        c: f64,
        condition: &'static str,
    },

    /// No evaluation path reached the requested tolerance.
    #[error("{what} did not converge (residual {residual:e} after {iterations} steps)")]
    NonConvergence {
        what: &'static str,
        residual: f64,
        iterations: usize,
    },

    /// The integrand returned NaN or an infinity.
    #[error("integrand is not finite at x = {abscissa}")]
    Evaluation { abscissa: f64 },

    /// A semi-infinite integral whose tail cannot be bounded.
    #[error("integral diverges: tail exponent {exponent} must be < -1")]
    Divergence { exponent: f64 },

    /// Averaged partial sums of an oscillatory integral stopped contracting.
    #[error("oscillatory acceleration failed after {panels} panels (last change {last_change:e})")]
    AccelerationFailure { panels: usize, last_change: f64 },

    /// A coefficient sequence fails the weighted summability proxy.
    #[error("coefficient sequence fails the decay condition: {detail}")]
    DecayCondition { detail: String },

    /// A profile function is not Lipschitz with the declared constant, or not periodic.
    #[error("profile function check failed: {detail}")]
    Lipschitz { detail: String },

    /// A log-space magnitude does not fit in an f64.
    #[error("{what} overflows: log-magnitude {log_magnitude}")]
    Overflow {
        what: &'static str,
        log_magnitude: f64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }
}
