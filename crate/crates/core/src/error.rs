use thiserror::Error;

/// Errors produced by the numerical routines and the harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{func}: argument {arg} is outside the domain ({expected})")]
    Domain {
        func: &'static str,
        arg: f64,
        expected: &'static str,
    },

    #[error("{func}: result overflows for argument {arg}")]
    Overflow { func: &'static str, arg: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "{integral}: quadrature did not converge on [{a}, {b}] \
         (estimate {value:e}, error {err_est:e}, tolerance {tolerance:e})"
    )]
    NonConvergence {
        integral: String,
        a: f64,
        b: f64,
        value: f64,
        err_est: f64,
        tolerance: f64,
    },

    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },

    #[error("truncation tail {tail:e} exceeds {limit:e} at x = {x}")]
    TailDominates { x: f64, tail: f64, limit: f64 },

    #[error("invalid hypergroup: {0}")]
    InvalidHypergroup(String),

    #[error("degenerate hypergroup table: c[{inverse}][{index}][0] = 0")]
    DegenerateTable { index: usize, inverse: usize },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Names the integral that failed, for non-convergence errors. Other
    /// variants pass through unchanged.
    pub fn in_integral(self, name: impl Into<String>) -> Self {
        match self {
            Error::NonConvergence {
                integral,
                a,
                b,
                value,
                err_est,
                tolerance,
            } => Error::NonConvergence {
                integral: format!("{}: {}", name.into(), integral),
                a,
                b,
                value,
                err_est,
                tolerance,
            },
            other => other,
        }
    }

    pub fn is_non_convergence(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
