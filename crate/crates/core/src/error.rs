use thiserror::Error;

use crate::syntax::FinType;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("type error in `{subterm}`: {msg}")]
    Type { subterm: String, msg: String },
    #[error("undeclared symbol `{0}`")]
    Undeclared(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("formula is not internal: {0}")]
    NotInternal(String),
    #[error("type {0} is not ground-returning")]
    NotGroundReturning(FinType),
    #[error("rule {rule} not applicable at {path}: {reason}")]
    Inapplicable {
        rule: String,
        path: String,
        reason: String,
    },
    #[error("outside the supported fragment at {path}: {node}")]
    Unsupported { path: String, node: String },
    #[error("termination measure did not decrease at step {0}")]
    Measure(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("trace mismatch: {0}")]
    Trace(String),
    #[error("existential `{0}` has no witness recipe")]
    Orphan(String),
    #[error("monotonicity certificate failed: {0}")]
    Monotonicity(String),
    #[error("unknown principle `{0}`")]
    UnknownPrinciple(String),
    #[error("`{0}` is not encoded: {1}")]
    NotEncoded(String, String),
    #[error("bounds exceeded: {0}")]
    Bounds(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("stage `{stage}` failed: {source}")]
    Stage { stage: String, source: Box<Error> },
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn type_err(subterm: impl ToString, msg: impl Into<String>) -> Error {
        Error::Type {
            subterm: subterm.to_string(),
            msg: msg.into(),
        }
    }

    pub fn in_stage(self, stage: &str) -> Error {
        Error::Stage {
            stage: stage.to_string(),
            source: Box::new(self),
        }
    }
}
