use thiserror::Error;

/// Errors raised by evaluators, samplers and verification suites.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature did not converge for {context}: estimate {estimate:e}, error {error:e}")]
    NonConvergence { context: String, estimate: f64, error: f64 },
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("numerical instability in {context}: successive estimates {first:e} and {second:e}")]
    NumericInstability { context: String, first: f64, second: f64 },
    #[error("target {target} outside bracket values [{lo_value}, {hi_value}]")]
    Bracket { target: f64, lo_value: f64, hi_value: f64 },
    #[error("degenerate denominator in {0}")]
    DegenerateDenominator(String),
    #[error("{context}: two evaluation routes disagree ({first:e} vs {second:e})")]
    Consistency { context: String, first: f64, second: f64 },
    #[error("could not build sampling table: {0}")]
    TableBuild(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error("report serialization failed: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
