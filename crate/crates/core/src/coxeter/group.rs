//! The word problem: reduced-word recognition, descents, ShortLex normal forms
//! and multiplication, all driven by the small-root automaton.

use std::collections::HashMap;
use std::sync::Arc;

use super::presentation::CoxeterPresentation;
use super::roots::{RootAction, SmallRootTable};
use super::word::{GenSet, Word};
use super::CoxeterError;

pub const DEAD: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Deterministic automaton accepting exactly the reduced words.
///
/// The state reached by a reduced word `w` is the set of small roots sent to
/// negative roots by `w`; its simple roots are the right descents of `w`.
#[derive(Debug, Clone)]
pub struct ReducedWordDfa {
    rank: usize,
    states: Vec<Vec<u32>>,
    trans: Vec<u32>,
    right_descents: Vec<GenSet>,
}

impl ReducedWordDfa {
    pub fn new(table: &SmallRootTable) -> Self {
        let n = table.rank();
        let mut states: Vec<Vec<u32>> = vec![Vec::new()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        index.insert(Vec::new(), 0);
        let mut trans = Vec::new();
        let mut right_descents = vec![GenSet::EMPTY];
        let mut next = 0;
        while next < states.len() {
            let cur = states[next].clone();
            for s in 0..n {
                if cur.binary_search(&table.simple(s)).is_ok() {
                    trans.push(DEAD);
                    continue;
                }
                let mut image = vec![table.simple(s)];
                for &b in &cur {
                    if let RootAction::Root(r) = table.act(b, s) {
                        image.push(r);
                    }
                }
                image.sort_unstable();
                image.dedup();
                let id = match index.get(&image) {
                    Some(&id) => id,
                    None => {
                        let id = states.len() as u32;
                        let mut desc = GenSet::EMPTY;
                        for t in 0..n {
                            if image.binary_search(&table.simple(t)).is_ok() {
                                desc.insert(t);
                            }
                        }
                        right_descents.push(desc);
                        index.insert(image.clone(), id);
                        states.push(image);
                        id
                    }
                };
                trans.push(id);
            }
            next += 1;
        }
        ReducedWordDfa {
            rank: n,
            states,
            trans,
            right_descents,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Small roots (by table index) recorded in a state.
    pub fn state_roots(&self, q: u32) -> &[u32] {
        &self.states[q as usize]
    }

    pub fn initial(&self) -> u32 {
        0
    }

    /// Successor, or [`DEAD`].
    pub fn step(&self, q: u32, s: usize) -> u32 {
        self.trans[q as usize * self.rank + s]
    }

    pub fn right_descents(&self, q: u32) -> GenSet {
        self.right_descents[q as usize]
    }

    /// Final state, or `None` if the word is not reduced.
    pub fn run(&self, letters: &[u8]) -> Option<u32> {
        let mut q = 0;
        for &s in letters {
            q = self.step(q, s as usize);
            if q == DEAD {
                return None;
            }
        }
        Some(q)
    }

    /// Position of the first letter that cannot be appended.
    pub fn first_failure(&self, letters: &[u8]) -> Option<usize> {
        let mut q = 0;
        for (i, &s) in letters.iter().enumerate() {
            q = self.step(q, s as usize);
            if q == DEAD {
                return Some(i);
            }
        }
        None
    }
}

/// A group element: its ShortLex normal form and both descent sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub word: Word,
    pub left: GenSet,
    pub right: GenSet,
}

impl Element {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn descents(&self, side: Side) -> GenSet {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word.cmp(&other.word)
    }
}

#[derive(Debug)]
struct GroupInner {
    presentation: CoxeterPresentation,
    roots: SmallRootTable,
    dfa: ReducedWordDfa,
}

/// A polygon Coxeter group with its word-problem machinery; cheap to clone.
#[derive(Debug, Clone)]
pub struct CoxeterGroup(Arc<GroupInner>);

impl CoxeterGroup {
    pub fn new(presentation: CoxeterPresentation) -> Self {
        let roots = SmallRootTable::new(&presentation);
        let dfa = ReducedWordDfa::new(&roots);
        CoxeterGroup(Arc::new(GroupInner {
            presentation,
            roots,
            dfa,
        }))
    }

    pub fn from_json(text: &str) -> Result<Self, CoxeterError> {
        Ok(Self::new(CoxeterPresentation::from_json(text)?))
    }

    pub fn presentation(&self) -> &CoxeterPresentation {
        &self.0.presentation
    }

    pub fn small_roots(&self) -> &SmallRootTable {
        &self.0.roots
    }

    pub fn dfa(&self) -> &ReducedWordDfa {
        &self.0.dfa
    }

    pub fn rank(&self) -> usize {
        self.0.presentation.rank()
    }

    pub fn parse(&self, text: &str) -> Result<Word, CoxeterError> {
        Word::parse(&self.0.presentation, text)
    }

    pub fn format(&self, w: &Word) -> String {
        w.format(&self.0.presentation)
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        self.0.dfa.run(w.letters()).is_some()
    }

    pub fn right_descents_of(&self, reduced: &[u8]) -> GenSet {
        let q = self.0.dfa.run(reduced).expect("word must be reduced");
        self.0.dfa.right_descents(q)
    }

    pub fn left_descents_of(&self, reduced: &[u8]) -> GenSet {
        let rev: Vec<u8> = reduced.iter().rev().copied().collect();
        self.right_descents_of(&rev)
    }

    /// `s·w` for a reduced `w` with `s` a left descent: `w` with one letter deleted.
    fn delete_left(&self, s: u8, w: &[u8]) -> Vec<u8> {
        let mut probe = Vec::with_capacity(w.len() + 1);
        probe.push(s);
        probe.extend_from_slice(w);
        let p = self
            .0
            .dfa
            .first_failure(&probe)
            .expect("s must be a left descent");
        let mut out = w.to_vec();
        out.remove(p - 1);
        out
    }

    /// `w·s` for a reduced `w` with `s` a right descent.
    fn delete_right(&self, w: &[u8], s: u8) -> Vec<u8> {
        let rev: Vec<u8> = w.iter().rev().copied().collect();
        let mut out = self.delete_left(s, &rev);
        out.reverse();
        out
    }

    /// Some reduced word for the same element.
    pub fn reduce(&self, w: &Word) -> Word {
        let dfa = &self.0.dfa;
        let mut u: Vec<u8> = Vec::with_capacity(w.len());
        let mut q = dfa.initial();
        for &s in w.letters() {
            let next = dfa.step(q, s as usize);
            if next != DEAD {
                u.push(s);
                q = next;
            } else {
                u = self.delete_right(&u, s);
                q = dfa.run(&u).expect("deletion keeps words reduced");
            }
        }
        Word::new(u)
    }

    /// ShortLex normal form of a reduced word, by repeated least-left-descent extraction.
    fn shortlex_of_reduced(&self, reduced: Vec<u8>) -> Vec<u8> {
        let mut u = reduced;
        let mut out = Vec::with_capacity(u.len());
        while !u.is_empty() {
            let s = self
                .left_descents_of(&u)
                .min()
                .expect("nonempty words have descents") as u8;
            out.push(s);
            u = self.delete_left(s, &u);
        }
        out
    }

    pub fn normal_form(&self, w: &Word) -> Element {
        let nf = self.shortlex_of_reduced(self.reduce(w).into_letters());
        self.element_from_normal(Word::new(nf))
    }

    /// Wraps a word already known to be the ShortLex normal form.
    pub fn element_from_normal(&self, w: Word) -> Element {
        let right = self.right_descents_of(w.letters());
        let left = self.left_descents_of(w.letters());
        Element {
            word: w,
            left,
            right,
        }
    }

    pub fn identity(&self) -> Element {
        Element {
            word: Word::empty(),
            left: GenSet::EMPTY,
            right: GenSet::EMPTY,
        }
    }

    pub fn generator(&self, s: usize) -> Element {
        Element {
            word: Word::new(vec![s as u8]),
            left: GenSet::singleton(s),
            right: GenSet::singleton(s),
        }
    }

    pub fn element(&self, text: &str) -> Result<Element, CoxeterError> {
        Ok(self.normal_form(&self.parse(text)?))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.normal_form(&a.word.concat(&b.word))
    }

    pub fn inverse(&self, a: &Element) -> Element {
        self.normal_form(&a.word.reversed())
    }

    pub fn right_mul(&self, a: &Element, s: usize) -> Element {
        self.normal_form(&a.word.with_suffix(s as u8))
    }

    pub fn left_mul(&self, s: usize, a: &Element) -> Element {
        self.normal_form(&a.word.with_prefix(s as u8))
    }

    pub fn descents(&self, w: &Element, side: Side) -> GenSet {
        w.descents(side)
    }

    /// Whether two words represent the same element.
    pub fn equal(&self, a: &Word, b: &Word) -> bool {
        self.normal_form(a).word == self.normal_form(b).word
    }
}
