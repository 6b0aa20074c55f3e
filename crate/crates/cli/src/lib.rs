//! The `tenfold` command line: job specs, selector resolution, reports
//! and the verification suites.

use std::fmt;

pub mod commands;
pub mod report;
pub mod resolve;
pub mod spec;
pub mod verify;

pub use commands::{run, Output};
pub use report::Report;
pub use spec::{parse_spec, JobSpec};

/// Seed used when `TENFOLD_SEED` is unset.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Parse,
    Validation,
    /// A consistency check inside the engines failed.
    Internal,
}

impl Kind {
    pub fn exit_code(self) -> i32 {
        match self {
            Kind::Parse => 2,
            Kind::Validation => 3,
            Kind::Internal => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub kind: Kind,
    /// 1-based line and column in the job spec, when there is one.
    pub position: Option<(usize, usize)>,
    pub message: String,
}

impl Failure {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        Failure { kind, position: None, message: message.into() }
    }

    pub fn at(kind: Kind, line: usize, col: usize, message: &str) -> Self {
        Failure { kind, position: Some((line, col)), message: message.to_string() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(Kind::Parse, message)
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self::new(Kind::Validation, message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(Kind::Internal, message)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            Kind::Parse => "parse error",
            Kind::Validation => "invalid input",
            Kind::Internal => "internal error",
        };
        match self.position {
            Some((l, c)) => write!(f, "{kind} at {l}:{c}: {}", self.message),
            None => write!(f, "{kind}: {}", self.message),
        }
    }
}

impl std::error::Error for Failure {}

impl From<tenfold::Error> for Failure {
    fn from(e: tenfold::Error) -> Self {
        let kind = match e {
            tenfold::Error::Internal(_) => Kind::Internal,
            _ => Kind::Validation,
        };
        Failure::new(kind, e.to_string())
    }
}

/// `TENFOLD_SEED` if set, else the spec's seed, else [`DEFAULT_SEED`].
pub fn seed(spec: &JobSpec) -> Result<u64, Failure> {
    match std::env::var("TENFOLD_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::validation(format!("TENFOLD_SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(spec.seed.unwrap_or(DEFAULT_SEED)),
    }
}
