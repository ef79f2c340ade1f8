//! Kazhdan–Lusztig cells of hyperbolic polygon Coxeter groups: the word
//! problem, KL polynomials, regular languages of reduced expressions, the
//! conjectural cell partition, brute-force oracles and Poincaré disk pictures.

pub mod automata;
pub mod cells;
pub mod coxeter;
pub mod kl;
pub mod render;
pub mod verify;

pub use coxeter::{
    CoxeterError, CoxeterGroup, CoxeterPresentation, Element, ElementBall, GenSet, Side, Word,
};
