//! Bruhat order, R- and Kazhdan–Lusztig polynomials, W-graphs, cells and the
//! Hecke algebra.

mod hecke;
mod poly;
mod table;
mod wgraph;

pub use hecke::{HeckeAlgebra, HeckeElement};
pub use poly::{HalfLaurent, IntPoly};
pub use table::KlTable;
pub use wgraph::{two_sided_cells, Partition, WGraph};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum KlError {
    #[error("resource limit: {pairs} Bruhat pairs exceed cap {cap}")]
    ResourceLimit { pairs: usize, cap: usize },
    #[error("ball too small: {0}")]
    BallTooSmall(String),
    #[error("malformed KL record: {0}")]
    BadRecord(String),
}
