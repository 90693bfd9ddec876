use thiserror::Error;

/// Errors found while reading a script. Every variant carries the position
/// of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unbound name `{name}`")]
    Unbound { line: usize, col: usize, name: String },
    #[error("{line}:{col}: ring mismatch: {msg}")]
    RingMismatch { line: usize, col: usize, msg: String },
}

impl ScriptError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ScriptError::Syntax { line, col, .. }
            | ScriptError::Unbound { line, col, .. }
            | ScriptError::RingMismatch { line, col, .. } => (*line, *col),
        }
    }
}
