//! Brute-force oracles and the empirical-vs-conjectural comparison.
//!
//! Nothing here shares memoised state with the engines it checks.

mod closure;
mod compare;
mod klcheck;
mod suites;

pub use closure::{braid_closure, oracle_classify, unique_reduced_census, Census, ClosureSet};
pub use compare::{empirical_vs_conjectural, ComparisonReport, Disagreement, OneSidedComparison};
pub use klcheck::ClassicalKl;
pub use suites::{
    descent_types, for_each_reduced_word, kl_suite, oracle_suite, KlSuite, OracleSuite,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("braid closure of {word} exceeds cap {cap}")]
    ResourceLimit { word: String, cap: usize },
    #[error("{0} is not a reduced expression")]
    NotReduced(String),
    #[error("{0} has several reduced expressions but no dihedral factor")]
    Inconsistent(String),
}

/// Default cap on the size of a braid closure.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;
