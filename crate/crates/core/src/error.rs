use thiserror::Error;

use crate::machine::MoveViolation;

/// Errors produced by the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("not a permutation of 1..{len}: {values:?}")]
    NotAPermutation { len: usize, values: Vec<u32> },

    #[error("sum decomposability is undefined for the empty permutation")]
    EmptyPermutation,

    #[error("{what} {requested} exceeds the limit of {cap}")]
    Limit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("machine has {expected} stages but the state carries {found}")]
    StageMismatch { expected: usize, found: usize },

    #[error("a machine needs at least one stage")]
    NoStages,

    #[error("illegal move: {0}")]
    IllegalMove(MoveViolation),

    #[error("illegal move at index {index}: {violation}")]
    Replay {
        index: usize,
        violation: MoveViolation,
    },

    #[error("{0}")]
    Unsupported(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::Limit { .. })
    }

    pub(crate) fn limit(what: &'static str, requested: usize, cap: usize) -> Self {
        Error::Limit {
            what,
            requested,
            cap,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
