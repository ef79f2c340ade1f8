//! Polygon Coxeter groups: presentations, exact field arithmetic, small roots,
//! the word problem and balls of elements.

mod ball;
mod field;
mod group;
mod presentation;
mod roots;
mod word;

pub use ball::{BallRecord, ElementBall};
pub use field::{cyclotomic, FieldScalar, RealCyclotomicField};
pub use group::{CoxeterGroup, Element, ReducedWordDfa, Side, DEAD};
pub use presentation::{AngleDenominator, CoxeterPresentation, GroupConfig, Order};
pub use roots::{Root, RootAction, SmallRootTable};
pub use word::{GenSet, Word};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid group config: {0}")]
    Config(String),
    #[error("angle denominator {0} must be an integer ≥ 2 or \"inf\"")]
    BadDenominator(String),
    #[error("a polygon needs at least 3 sides, got {0}")]
    TooFewSides(usize),
    #[error("angle sum {angle_sum} is not below {bound}; the polygon is not hyperbolic")]
    NonHyperbolic { angle_sum: String, bound: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("resource limit: {what} exceeds cap {cap}")]
    ResourceLimit { what: String, cap: usize },
    #[error("malformed ball record: {0}")]
    BadRecord(String),
}
