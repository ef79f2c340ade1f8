//! The conjectural two-sided partition and one-sided cells, on balls and as
//! regular languages.

mod dihedral;
mod onesided;
mod partition;

pub use dihedral::{CellLabel, DihedralData, DihedralEntry};
pub use onesided::{omega_elements, u_t_fsa, Coverage, OneSidedCellSpec, OneSidedCells};
pub use partition::{ConjecturalPartition, LabelCounts, PartitionCheck, PartitionReport};

use crate::automata::AutomataError;
use crate::coxeter::CoxeterError;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CellError {
    #[error("every polygon vertex is ideal; there are no finite dihedral subgroups")]
    NoFiniteVertex,
    #[error("level {0} does not exist")]
    NoSuchLevel(usize),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}
