//! Fixtures shared by the benchmarks.

use polycell::{CoxeterGroup, CoxeterPresentation};

pub fn w237() -> CoxeterGroup {
    CoxeterGroup::new(CoxeterPresentation::from_angles("W237", &[3, 7, 2]).unwrap())
}

pub fn w2224() -> CoxeterGroup {
    CoxeterGroup::new(CoxeterPresentation::from_angles("W2224", &[2, 2, 2, 4]).unwrap())
}
