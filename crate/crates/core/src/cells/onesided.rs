//! Descent-class regions `U^T`, translator sets `Ω_T` and the one-sided cells `w·U^T`.

use std::collections::BTreeSet;

use log::debug;
use serde::Serialize;

use super::{CellError, ConjecturalPartition, DihedralEntry};
use crate::automata::{analyze, difference, is_subset, union, Fsa, Languages};
use crate::coxeter::{Element, ElementBall, GenSet};

/// Red(U^T) = Red(W^T) minus the labels strictly above the level of `T`.
pub fn u_t_fsa(
    langs: &Languages,
    partition: &ConjecturalPartition,
    entry: &DihedralEntry,
) -> Result<Fsa, CellError> {
    let wt = langs.descent_class_fsa(entry.pair)?;
    Ok(difference(&wt, partition.above_fsa(entry.level)?)?)
}

/// `{w⁻¹·w_T : w ∈ U^T, l(w) ≤ radius}` sorted by (length, ShortLex); `u_t` is Red(U^T).
pub fn omega_elements(
    ball: &ElementBall,
    entry: &DihedralEntry,
    u_t: &Fsa,
    radius: usize,
) -> Vec<Element> {
    let g = ball.group();
    let wt = g.element_from_normal(g.reduce(&entry.longest));
    let set: BTreeSet<Element> = ball
        .elements()
        .iter()
        .filter(|w| {
            w.length() <= radius && w.left == entry.pair && Languages::accepts(u_t, &w.word)
        })
        .map(|w| g.multiply(&g.inverse(w), &wt))
        .collect();
    set.into_iter().collect()
}

#[derive(Debug, Clone)]
pub struct OneSidedCellSpec {
    pub level: usize,
    pub pair: GenSet,
    pub translator: Element,
    /// Red(translator·U^T).
    pub fsa: Fsa,
}

/// How far the union of the one-sided specs at a level reproduces Red(C_i).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    /// Union ⊆ Red(C_i).
    pub contained: bool,
    /// Union = Red(C_i) as languages.
    pub equal: bool,
    /// Shortest length of a word of Red(C_i) outside the union, up to the checked length.
    pub first_gap: Option<usize>,
    pub checked_length: usize,
}

/// Ω_T, minimal translators and one-sided cell languages at one level.
#[derive(Debug, Clone)]
pub struct OneSidedCells {
    pub level: usize,
    pub radius: usize,
    pub k: usize,
    /// Red(U^T) per pair at this level.
    pub regions: Vec<(GenSet, Fsa)>,
    /// Every discovered `(T, w)` with its translate, sorted by (length, ShortLex, T).
    pub discovered: Vec<OneSidedCellSpec>,
    /// Indices into `discovered` of the minimal translators.
    pub minimal: Vec<usize>,
    /// Containments `w·U^T ⊆ w′·U^{T′}` seen with `T ≠ T′`.
    pub cross_pair_containments: usize,
}

impl OneSidedCells {
    /// Builds translates of `U^T` for all `T` at `level` and translators from the
    /// elements of `ball` of length ≤ `radius`, then keeps the ⪯-minimal ones.
    ///
    /// `(w, T)` is dropped when some other `(w′, T′)` with `l(w′) ≤ l(w)` has
    /// `w·U^T ⊆ w′·U^{T′}`; when two translators of equal length have equal
    /// translates the ShortLex-least one is kept.
    pub fn new(
        langs: &Languages,
        partition: &ConjecturalPartition,
        ball: &ElementBall,
        level: usize,
        radius: usize,
        k: usize,
    ) -> Result<Self, CellError> {
        let data = partition.data();
        if level == 0 || level > data.levels() {
            return Err(CellError::NoSuchLevel(level));
        }
        let mut regions = Vec::new();
        let mut discovered = Vec::new();
        for entry in data.at_level(level) {
            let u = u_t_fsa(langs, partition, entry)?;
            for x in omega_elements(ball, entry, &u, radius) {
                let fsa = langs.left_translate(&u, &x, k)?;
                discovered.push(OneSidedCellSpec {
                    level,
                    pair: entry.pair,
                    translator: x,
                    fsa,
                });
            }
            regions.push((entry.pair, u));
        }
        discovered.sort_by(|a, b| (&a.translator, a.pair).cmp(&(&b.translator, b.pair)));
        let n = discovered.len();
        let mut contains = vec![vec![false; n]; n];
        let mut cross = 0;
        for i in 0..n {
            for j in 0..n {
                if i != j && discovered[j].translator.length() <= discovered[i].translator.length()
                {
                    contains[i][j] = is_subset(&discovered[i].fsa, &discovered[j].fsa)?;
                    if contains[i][j] && discovered[i].pair != discovered[j].pair {
                        cross += 1;
                    }
                }
            }
        }
        let minimal: Vec<usize> = (0..n)
            .filter(|&i| {
                !(0..n).any(|j| {
                    contains[i][j] && {
                        let mutual = contains[j][i];
                        let same_len =
                            discovered[i].translator.length() == discovered[j].translator.length();
                        !(same_len && mutual && i < j)
                    }
                })
            })
            .collect();
        debug!(
            "level {level}: {n} translators, {} minimal, {cross} cross-pair containments",
            minimal.len()
        );
        Ok(OneSidedCells {
            level,
            radius,
            k,
            regions,
            discovered,
            minimal,
            cross_pair_containments: cross,
        })
    }

    /// Reassembles stored results; every spec counts as minimal.
    pub fn from_specs(
        level: usize,
        radius: usize,
        k: usize,
        regions: Vec<(GenSet, Fsa)>,
        specs: Vec<OneSidedCellSpec>,
    ) -> Self {
        OneSidedCells {
            level,
            radius,
            k,
            regions,
            minimal: (0..specs.len()).collect(),
            discovered: specs,
            cross_pair_containments: 0,
        }
    }

    pub fn region(&self, pair: GenSet) -> Option<&Fsa> {
        self.regions
            .iter()
            .find(|(t, _)| *t == pair)
            .map(|(_, f)| f)
    }

    pub fn specs(&self) -> impl Iterator<Item = &OneSidedCellSpec> {
        self.minimal.iter().map(|&i| &self.discovered[i])
    }

    pub fn union_fsa(&self) -> Result<Fsa, CellError> {
        let mut all = Fsa::empty(self.regions[0].1.alphabet().clone());
        for s in self.specs() {
            all = union(&all, &s.fsa)?;
        }
        Ok(all)
    }

    /// Which spec, if any, contains the element.
    pub fn locate(&self, w: &Element) -> Option<usize> {
        self.specs()
            .position(|s| Languages::accepts(&s.fsa, &w.word))
    }

    /// Compares the union of the specs with Red(C_i).
    pub fn coverage(
        &self,
        partition: &ConjecturalPartition,
        checked_length: usize,
    ) -> Result<Coverage, CellError> {
        let cell = partition
            .label_fsa(super::CellLabel::Level(self.level))
            .unwrap();
        let all = self.union_fsa()?;
        let outside = difference(&all, cell)?;
        let gap = difference(cell, &all)?;
        let counts = analyze(&gap, checked_length)?.counts;
        Ok(Coverage {
            contained: outside.is_empty_language(),
            equal: outside.is_empty_language() && gap.is_empty_language(),
            first_gap: counts.iter().position(|c| c.bits() > 0),
            checked_length,
        })
    }

    /// Whether every pair of minimal specs is disjoint or nested.
    pub fn nested_or_disjoint(&self) -> Result<bool, CellError> {
        let specs: Vec<&OneSidedCellSpec> = self.specs().collect();
        for i in 0..specs.len() {
            for j in i + 1..specs.len() {
                let (a, b) = (&specs[i].fsa, &specs[j].fsa);
                let meet = crate::automata::intersection(a, b)?;
                if !meet.is_empty_language() && !is_subset(a, b)? && !is_subset(b, a)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
