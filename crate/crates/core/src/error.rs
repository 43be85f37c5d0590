use thiserror::Error;

use crate::automaton::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid automaton: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what} budget of {limit} exceeded")]
    Budget { what: &'static str, limit: usize },
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("alphabet already contains the reserved letter `{0}`")]
    ReservedLetter(String),
    #[error("automaton has no acceptance condition")]
    NoAcceptance,
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("automaton not structurally simple")]
    NotStructurallySimple,
    #[error("pumping budget exhausted, best probability reached {best}")]
    PumpingExhausted { best: crate::prob::Prob },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
