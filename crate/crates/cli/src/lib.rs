//! Session language and command runner behind the `gsw` binary.

pub mod parse;
pub mod session;

use std::fmt;

use gsw_core::Error;

pub use parse::{parse, ParseError, Session};
pub use session::{dump_session, execute, ComputeError, Transcript};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

#[derive(Debug)]
pub enum RunError {
    Parse(ParseError),
    Compute(ComputeError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Parse(_) => EXIT_PARSE,
            RunError::Compute(ComputeError {
                error: Error::ResourceLimit(_),
                ..
            }) => EXIT_RESOURCE,
            RunError::Compute(_) => EXIT_ERROR,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Parse(e) => write!(f, "parse error at {e}"),
            RunError::Compute(e) => write!(f, "error at {e}"),
        }
    }
}

impl std::error::Error for RunError {}

/// Parses and runs a session.
pub fn run(text: &str) -> Result<Transcript, RunError> {
    let session = parse(text).map_err(RunError::Parse)?;
    execute(&session).map_err(RunError::Compute)
}
