use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Why an instance was not run through the decomposition checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    /// The graph has a loop, so its chromatic polynomial is identically zero.
    Loop,
    /// The graph has a bridge, so both flow polynomials vanish.
    Bridge,
    /// A configured enumeration cap was exceeded.
    Cap,
    /// Degenerate input (no vertices, or cyclomatic number zero).
    Empty,
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SkipReason::Loop => "loop",
            SkipReason::Bridge => "bridge",
            SkipReason::Cap => "cap",
            SkipReason::Empty => "empty",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{what} inapplicable ({reason})")]
    Inapplicable { what: &'static str, reason: SkipReason },

    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("polynomial degree {degree} exceeds transform degree {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },

    #[error("duplicate abscissa {0} in interpolation points")]
    DuplicateAbscissa(String),

    #[error("expected {expected} interpolation points, got {got}")]
    PointCount { expected: usize, got: usize },

    #[error("interpolated polynomial is not integer-valued: {0}")]
    NonIntegral(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("counterexample: {check}: {detail}")]
    Counterexample { check: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code: 1 counterexample, 2 rejected input, 3 cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Counterexample { .. } | Error::Postcondition(_) | Error::NonIntegral(_) => 1,
            Error::CapExceeded { .. } => 3,
            Error::Parse { .. }
            | Error::Invalid(_)
            | Error::Inapplicable { .. }
            | Error::DegreeTooLarge { .. }
            | Error::DuplicateAbscissa(_)
            | Error::PointCount { .. }
            | Error::Io(_) => 2,
        }
    }

    /// The skip reason this error maps to in a survey, if any.
    pub fn skip_reason(&self) -> Option<SkipReason> {
        match self {
            Error::Inapplicable { reason, .. } => Some(*reason),
            Error::CapExceeded { .. } => Some(SkipReason::Cap),
            _ => None,
        }
    }

    pub(crate) fn cap(what: &'static str, value: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::CapExceeded {
            what,
            value: value.into(),
            cap: cap.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
