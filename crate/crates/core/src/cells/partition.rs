//! The partition `{C_id, C_0, C_1, …, C_m}` by dihedral pattern containment.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{CellError, CellLabel, DihedralData};
use crate::automata::{
    are_equivalent, difference, intersection, minimize, union, Alphabet, Fsa, Languages,
};
use crate::coxeter::{Element, ElementBall, Word};

#[derive(Debug, Clone)]
pub struct ConjecturalPartition {
    data: DihedralData,
    k: usize,
    /// Red(X_μ) per dihedral entry, in entry order.
    patterns: Vec<Fsa>,
    /// `X_i` for i = 1..=m at index i−1.
    levels: Vec<Fsa>,
    /// `⋃_{j>i} X_j` at index i−1.
    above: Vec<Fsa>,
    labels: BTreeMap<CellLabel, Fsa>,
    red: Fsa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionCheck {
    pub pairwise_disjoint: bool,
    pub union_is_red: bool,
}

impl PartitionCheck {
    pub fn ok(&self) -> bool {
        self.pairwise_disjoint && self.union_is_red
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelCounts {
    pub label: String,
    pub fsa: String,
    pub states: usize,
    /// Number of elements of each length 0..=radius.
    pub counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub group: String,
    pub k: usize,
    pub radius: usize,
    pub trust_margin: usize,
    pub exponents: Vec<u32>,
    pub longest_words: Vec<String>,
    pub labels: Vec<LabelCounts>,
    pub check: PartitionCheck,
}

fn sorted(mut v: Vec<CellLabel>) -> Vec<CellLabel> {
    v.sort();
    v
}

/// `X_i` and `⋃_{j>i} X_j` for every level.
fn level_unions(
    data: &DihedralData,
    patterns: &[Fsa],
    alphabet: &Alphabet,
) -> Result<(Vec<Fsa>, Vec<Fsa>), CellError> {
    let empty = Fsa::empty(alphabet.clone());
    let mut levels = Vec::new();
    for i in 1..=data.levels() {
        let mut x = empty.clone();
        for (e, p) in data.entries().iter().zip(patterns) {
            if e.level == i {
                x = union(&x, p)?;
            }
        }
        levels.push(x);
    }
    let mut above = vec![empty; data.levels()];
    for i in (0..data.levels().saturating_sub(1)).rev() {
        above[i] = union(&above[i + 1], &levels[i + 1])?;
    }
    Ok((levels, above))
}

impl ConjecturalPartition {
    pub fn new(langs: &Languages, k: usize) -> Result<Self, CellError> {
        let data = DihedralData::new(langs.group().presentation())?;
        let patterns = data
            .entries()
            .iter()
            .map(|e| langs.red_x_mu(&e.longest, k))
            .collect::<Result<Vec<_>, _>>()?;
        let (levels, above) = level_unions(&data, &patterns, langs.alphabet())?;
        let red = langs.red().clone();
        let mut labels = BTreeMap::new();
        let identity = minimize(&Fsa::from_words(langs.alphabet().clone(), &[vec![]]));
        let mut all_levels = Fsa::empty(langs.alphabet().clone());
        for (i, x) in levels.iter().enumerate() {
            labels.insert(CellLabel::Level(i + 1), difference(x, &above[i])?);
            all_levels = union(&all_levels, x)?;
        }
        let zero = difference(&difference(&red, &all_levels)?, &identity)?;
        labels.insert(CellLabel::Zero, zero);
        labels.insert(CellLabel::Id, identity);
        Ok(ConjecturalPartition {
            data,
            k,
            patterns,
            levels,
            above,
            labels,
            red,
        })
    }

    /// Reassembles a partition from stored pattern automata (in dihedral entry
    /// order) and label automata.
    pub fn from_fsas(
        langs: &Languages,
        k: usize,
        patterns: Vec<Fsa>,
        labels: BTreeMap<CellLabel, Fsa>,
    ) -> Result<Self, CellError> {
        let data = DihedralData::new(langs.group().presentation())?;
        if patterns.len() != data.entries().len()
            || labels.keys().copied().ne(sorted(data.labels()))
        {
            return Err(CellError::Automata(crate::automata::AutomataError::Parse(
                "stored automata do not match the dihedral data".into(),
            )));
        }
        let (levels, above) = level_unions(&data, &patterns, langs.alphabet())?;
        Ok(ConjecturalPartition {
            data,
            k,
            patterns,
            levels,
            above,
            labels,
            red: langs.red().clone(),
        })
    }

    pub fn data(&self) -> &DihedralData {
        &self.data
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Red(X_μ) for the `index`-th dihedral entry.
    pub fn pattern_fsa(&self, index: usize) -> &Fsa {
        &self.patterns[index]
    }

    /// `X_i`: elements containing some level-`i` longest word.
    pub fn level_fsa(&self, level: usize) -> Result<&Fsa, CellError> {
        self.levels
            .get(level.wrapping_sub(1))
            .ok_or(CellError::NoSuchLevel(level))
    }

    /// `⋃_{j>i} X_j`.
    pub fn above_fsa(&self, level: usize) -> Result<&Fsa, CellError> {
        self.above
            .get(level.wrapping_sub(1))
            .ok_or(CellError::NoSuchLevel(level))
    }

    pub fn label_fsa(&self, label: CellLabel) -> Option<&Fsa> {
        self.labels.get(&label)
    }

    pub fn label_fsas(&self) -> &BTreeMap<CellLabel, Fsa> {
        &self.labels
    }

    /// Label of the element whose reduced expression is `w`.
    pub fn classify_word(&self, w: &Word) -> CellLabel {
        if w.is_empty() {
            return CellLabel::Id;
        }
        (1..=self.data.levels())
            .rev()
            .find(|&i| Languages::accepts(&self.levels[i - 1], w))
            .map_or(CellLabel::Zero, CellLabel::Level)
    }

    pub fn classify_element(&self, w: &Element) -> CellLabel {
        self.classify_word(&w.word)
    }

    pub fn labels_on_ball(&self, ball: &ElementBall) -> Vec<CellLabel> {
        ball.elements()
            .iter()
            .map(|w| self.classify_element(w))
            .collect()
    }

    /// Pairwise disjointness and union = Red(W), by automata algebra.
    pub fn check(&self) -> Result<PartitionCheck, CellError> {
        let fsas: Vec<&Fsa> = self.labels.values().collect();
        let mut disjoint = true;
        for i in 0..fsas.len() {
            for j in i + 1..fsas.len() {
                if !intersection(fsas[i], fsas[j])?.is_empty_language() {
                    disjoint = false;
                }
            }
        }
        let mut all = Fsa::empty(self.red.alphabet().clone());
        for f in &fsas {
            all = union(&all, f)?;
        }
        Ok(PartitionCheck {
            pairwise_disjoint: disjoint,
            union_is_red: are_equivalent(&all, &self.red)?,
        })
    }

    pub fn report(
        &self,
        ball: &ElementBall,
        trust_margin: usize,
    ) -> Result<PartitionReport, CellError> {
        let p = ball.group().presentation();
        let mut counts: BTreeMap<CellLabel, Vec<usize>> = self
            .labels
            .keys()
            .map(|&l| (l, vec![0; ball.radius() + 1]))
            .collect();
        for w in ball.elements() {
            counts.get_mut(&self.classify_element(w)).unwrap()[w.length()] += 1;
        }
        let labels = self
            .labels
            .iter()
            .map(|(l, f)| LabelCounts {
                label: l.name(),
                fsa: format!("fsa/{}.fsa", l.name()),
                states: f.num_states(),
                counts: counts[l].clone(),
            })
            .collect();
        Ok(PartitionReport {
            group: p.name().to_string(),
            k: self.k,
            radius: ball.radius(),
            trust_margin,
            exponents: self.data.exponents().to_vec(),
            longest_words: self
                .data
                .entries()
                .iter()
                .map(|e| e.longest.format(p))
                .collect(),
            labels,
            check: self.check()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterGroup, CoxeterPresentation};

    fn w237() -> (CoxeterGroup, ConjecturalPartition) {
        let g = CoxeterGroup::new(CoxeterPresentation::from_angles("W237", &[3, 7, 2]).unwrap());
        let mut langs = Languages::new(&g);
        langs.set_validated_k(6);
        let part = ConjecturalPartition::new(&langs, 6).unwrap();
        (g, part)
    }

    #[test]
    fn small_labels() {
        let (g, part) = w237();
        let l = |s: &str| part.classify_element(&g.element(s).unwrap());
        assert_eq!(l(""), CellLabel::Id);
        assert_eq!(l("rst"), CellLabel::Zero);
        assert_eq!(l("srt"), CellLabel::Level(1));
        assert_eq!(l("rs"), CellLabel::Zero);
        assert_eq!(l("rt"), CellLabel::Level(1));
        assert_eq!(l("srs"), CellLabel::Level(2));
        assert_eq!(l("tststst"), CellLabel::Level(3));
    }

    #[test]
    fn partition_is_exact() {
        let (_, part) = w237();
        assert!(part.check().unwrap().ok());
    }
}
