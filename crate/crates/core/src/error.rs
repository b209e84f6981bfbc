use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed field spec `{spec}`: {reason}")]
    FieldSpec { spec: String, reason: String },

    #[error("degenerate field record: {0}")]
    DegenerateField(String),

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("{0}")]
    Domain(String),

    #[error("{what} did not converge after {iterations} iterations (achieved {achieved:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        achieved: f64,
    },

    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tol:e} after {intervals} subintervals")]
    Quadrature {
        estimate: f64,
        tol: f64,
        intervals: usize,
    },

    #[error("{what}: {requested} exceeds the available range {limit}")]
    Range {
        what: &'static str,
        requested: f64,
        limit: f64,
    },

    #[error("evaluation at t = {t} failed: {reason}")]
    Evaluation { t: f64, reason: String },

    #[error("suspected even-order zero near t = {t} (|Z| = {value:e}, no sign change)")]
    EvenOrderZero { t: f64, value: f64 },

    #[error("field and character disagree: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
