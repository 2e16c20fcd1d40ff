use std::fmt;

use thiserror::Error;

/// Line and column (both 1-based) of a token in a session file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },

    #[error("{pos}: undefined name `{name}`")]
    UndefinedName { pos: Pos, name: String },

    #[error("{pos}: undefined variable `{name}`")]
    UndefinedVariable { pos: Pos, name: String },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("data file: {0}")]
    Data(String),

    #[error(transparent)]
    Core(#[from] derlie_core::Error),
}

impl CliError {
    /// 3 for broken structural guarantees, 2 for everything the user can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_invariant_violation() => 3,
            _ => 2,
        }
    }

    pub(crate) fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        CliError::Syntax { pos, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
