//! Finite dihedral parabolic subgroups and their exponent levels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CellError;
use crate::coxeter::{AngleDenominator, CoxeterPresentation, GenSet, Word};

/// Label of a set in the partition `{C_id, C_0, C_1, …, C_m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellLabel {
    Id,
    Zero,
    Level(usize),
}

impl CellLabel {
    /// File-name friendly name: `C_id`, `C0`, `C1`, …
    pub fn name(self) -> String {
        match self {
            CellLabel::Id => "C_id".into(),
            CellLabel::Zero => "C0".into(),
            CellLabel::Level(i) => format!("C{i}"),
        }
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for CellLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "C_id" | "id" => Ok(CellLabel::Id),
            "C0" | "0" => Ok(CellLabel::Zero),
            _ => s
                .trim_start_matches('C')
                .parse::<usize>()
                .ok()
                .filter(|&i| i > 0)
                .map(CellLabel::Level)
                .ok_or_else(|| format!("bad cell label {s:?}")),
        }
    }
}

/// One finite dihedral subgroup `⟨s, t⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralEntry {
    pub pair: GenSet,
    /// `m(s, t)`; the subgroup has order `2m`.
    pub order: u32,
    /// ShortLex-least reduced expression of the longest element.
    pub longest: Word,
    /// 1-based index of `order` among the distinct exponents.
    pub level: usize,
}

impl DihedralEntry {
    pub fn group_order(&self) -> u32 {
        2 * self.order
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralData {
    /// Sorted by (level, pair).
    entries: Vec<DihedralEntry>,
    exponents: Vec<u32>,
}

impl DihedralData {
    pub fn new(p: &CoxeterPresentation) -> Result<Self, CellError> {
        let n = p.rank();
        let mut raw = Vec::new();
        for (i, a) in p.angles().iter().enumerate() {
            if let AngleDenominator::Finite(m) = *a {
                let (s, t) = (i.min((i + 1) % n), i.max((i + 1) % n));
                let longest: Vec<u8> = (0..m)
                    .map(|j| if j % 2 == 0 { s as u8 } else { t as u8 })
                    .collect();
                raw.push((GenSet::pair(s, t), m, Word::new(longest)));
            }
        }
        if raw.is_empty() {
            return Err(CellError::NoFiniteVertex);
        }
        let mut exponents: Vec<u32> = raw.iter().map(|r| r.1).collect();
        exponents.sort_unstable();
        exponents.dedup();
        let mut entries: Vec<DihedralEntry> = raw
            .into_iter()
            .map(|(pair, order, longest)| DihedralEntry {
                pair,
                order,
                longest,
                level: exponents.iter().position(|&e| e == order).unwrap() + 1,
            })
            .collect();
        entries.sort_by_key(|a| (a.level, a.pair));
        Ok(DihedralData { entries, exponents })
    }

    pub fn entries(&self) -> &[DihedralEntry] {
        &self.entries
    }

    /// `e_1 < … < e_m`.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Number of levels `m`.
    pub fn levels(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponent(&self, level: usize) -> u32 {
        self.exponents[level - 1]
    }

    pub fn at_level(&self, level: usize) -> impl Iterator<Item = &DihedralEntry> {
        self.entries.iter().filter(move |e| e.level == level)
    }

    pub fn entry(&self, pair: GenSet) -> Option<&DihedralEntry> {
        self.entries.iter().find(|e| e.pair == pair)
    }

    /// All labels `C_id, C_0, C_1, …, C_m`.
    pub fn labels(&self) -> Vec<CellLabel> {
        let mut v = vec![CellLabel::Id, CellLabel::Zero];
        v.extend((1..=self.levels()).map(CellLabel::Level));
        v
    }

    /// Predicted number of two-sided cells, `m + 2`.
    pub fn predicted_cell_count(&self) -> usize {
        self.levels() + 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w237_data() {
        let p = CoxeterPresentation::from_angles("W237", &[3, 7, 2]).unwrap();
        let d = DihedralData::new(&p).unwrap();
        let words: Vec<String> = d.entries().iter().map(|e| e.longest.format(&p)).collect();
        assert_eq!(words, ["rt", "rsr", "stststs"]);
        assert_eq!(d.exponents(), &[2, 3, 7]);
        assert_eq!(d.predicted_cell_count(), 5);
    }

    #[test]
    fn w2224_data() {
        let p = CoxeterPresentation::from_angles("W2224", &[2, 2, 2, 4]).unwrap();
        let d = DihedralData::new(&p).unwrap();
        let mut orders: Vec<u32> = d.entries().iter().map(|e| e.group_order()).collect();
        orders.sort();
        assert_eq!(orders, [4, 4, 4, 8]);
        assert_eq!(d.levels(), 2);
        assert_eq!(d.predicted_cell_count(), 4);
        assert_eq!(d.at_level(2).next().unwrap().longest.format(&p), "adad");
    }

    #[test]
    fn ideal_polygon_has_no_data() {
        let i = AngleDenominator::Ideal;
        let p = CoxeterPresentation::polygon("ideal", &[i, i, i]).unwrap();
        assert_eq!(DihedralData::new(&p), Err(CellError::NoFiniteVertex));
    }

    #[test]
    fn label_names() {
        for l in [CellLabel::Id, CellLabel::Zero, CellLabel::Level(3)] {
            assert_eq!(l.name().parse::<CellLabel>().unwrap(), l);
        }
        assert!(CellLabel::Id < CellLabel::Zero && CellLabel::Zero < CellLabel::Level(1));
    }
}
