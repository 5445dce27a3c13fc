use thiserror::Error;

/// Errors raised by every fallible operation in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid precision: {digits} digits requested, at least {minimum} required")]
    InvalidPrecision { digits: u32, minimum: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("capacity error: n_max = {requested} exceeds the limit {limit}")]
    Capacity { requested: usize, limit: usize },

    #[error(
        "precision exhausted after reaching {digits} digits; last two estimates {last} and {previous}"
    )]
    PrecisionExhausted {
        digits: u32,
        last: String,
        previous: String,
    },

    #[error("solver did not converge after {iterations} iterations: {message}")]
    Solver {
        iterations: usize,
        message: String,
        /// Iterates `(re, im)` visited by the solver, in order.
        trace: Vec<(f64, f64)>,
    },

    #[error("order error: requested order {requested}, available {available}")]
    Order { requested: usize, available: usize },

    #[error("series consistency failure at m = {m}: expected {expected}, found {found}")]
    SeriesConsistency {
        m: usize,
        expected: String,
        found: String,
    },

    #[error("branch error: {0}")]
    Branch(String),

    #[error("regime error: {0}")]
    Regime(String),

    #[error("step error: {0}")]
    Step(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    ///
    /// 2 for domain and range problems, 3 when precision escalation gives up,
    /// 4 for internal consistency failures (branch or series bookkeeping).
    /// True when writing failed because the reader went away.
    pub fn is_broken_pipe(&self) -> bool {
        match self {
            Error::Io(e) => e.kind() == std::io::ErrorKind::BrokenPipe,
            Error::Csv(e) => matches!(e.kind(), csv::ErrorKind::Io(io) if io.kind() == std::io::ErrorKind::BrokenPipe),
            _ => false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidPrecision { .. }
            | Error::Domain(_)
            | Error::Range(_)
            | Error::Capacity { .. }
            | Error::Regime(_)
            | Error::Step(_)
            | Error::Order { .. }
            | Error::Parse(_) => 2,
            Error::PrecisionExhausted { .. } => 3,
            Error::Solver { .. } | Error::SeriesConsistency { .. } | Error::Branch(_) => 4,
            Error::Csv(_) | Error::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
