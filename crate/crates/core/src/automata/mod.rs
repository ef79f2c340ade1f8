//! Finite-state automata and the regular languages of reduced expressions.

mod factor;
mod fsa;
mod languages;
mod ops;
mod pairs;

pub use factor::factor_matcher;
pub use fsa::{pair_symbol, unpair_symbol, Alphabet, Fsa, EPS, PAD};
pub use languages::{canonical_fsa, reduced_word_counts, Languages};
pub use ops::{
    analyze, are_equivalent, boolean, determinize, determinize_minimize, difference, intersection,
    is_subset, minimize, union, Analysis, BoolOp, DEFAULT_STATE_CAP,
};
pub use pairs::{equal_endpoint_pairs, pair_word, pairs_with_target, project_first};

use crate::coxeter::CoxeterError;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AutomataError {
    #[error("state blowup: more than {cap} states")]
    StateBlowup { cap: usize },
    #[error("automata over different alphabets")]
    AlphabetMismatch,
    #[error("pattern {0:?} is not reduced")]
    PatternNotReduced(String),
    #[error("fellow-traveller constant k = {0} has not been validated")]
    KNotValidated(usize),
    #[error("{0:?} is not a descent class with nonempty W^T")]
    InvalidDescentClass(String),
    #[error("automaton file: {0}")]
    Parse(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}
