use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method ran out of budget. Carries the best estimate.
    #[error("no convergence after {evaluations} evaluations: estimate {estimate}, error {error}")]
    Convergence {
        estimate: f64,
        error: f64,
        evaluations: usize,
    },

    /// The function has the same sign at both ends of the bracket.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// The periodic box cannot hold the evolved state.
    #[error(
        "grid too small: state reaches |x| = {reach} (mean {mean} + 6 sigma, sigma {sigma}) \
         but the box half-width is {half_width}"
    )]
    GridTooSmall {
        reach: f64,
        mean: f64,
        sigma: f64,
        half_width: f64,
    },

    /// Two fields are not sampled on the same grid or at the same time.
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
