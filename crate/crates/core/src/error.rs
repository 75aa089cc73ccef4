use std::fmt;

use thiserror::Error;

/// Line and column (both 1-based) of a token in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("lexical error at {pos}: {msg}")]
    Lex { pos: Position, msg: String },

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Position, msg: String },

    #[error("unsafe variable {var} in rule `{rule}`")]
    Unsafe { var: String, rule: String },

    #[error("program uses variables but contains no constants to instantiate them with")]
    NoConstants,

    #[error("solving exceeded the time limit")]
    Timeout,

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
