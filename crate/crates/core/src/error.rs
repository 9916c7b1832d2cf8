use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("letter index {letter} out of range for alphabet of size {size}")]
    LetterOutOfRange { letter: usize, size: usize },
    #[error("state id {state} out of range for automaton with {size} states")]
    StateOutOfRange { state: usize, size: usize },
    #[error("transition function is not total: missing ({state}, letter {letter})")]
    NotTotal { state: usize, letter: usize },
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("not a game automaton: {0}")]
    NotGameAutomaton(String),
    #[error("state budget exceeded: needed more than {budget} states")]
    BudgetExceeded { budget: usize },
    #[error("parse error at {at}: {msg}")]
    Parse { at: String, msg: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("word and tree atoms mixed in one formula (`{0}`)")]
    MixedSorts(String),
    #[error("undecidable fragment: {0}")]
    UndecidableFragment(String),
    #[error("lasso cycle contains no letter R")]
    NoRInCycle,
    #[error("profile class unsupported: {0}")]
    UnsupportedProfile(String),
    #[error("illegal strategy edge at position {0}")]
    IllegalStrategyEdge(usize),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
