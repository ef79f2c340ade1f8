use std::cmp::Ordering;
use std::fmt;

use super::{CoxeterError, CoxeterPresentation};

/// A word over the generators, stored as generator indices.
///
/// The derived `Ord` is ShortLex: shorter words first, then lexicographic in
/// generator index order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, s: u8) {
        self.0.push(s);
    }

    pub fn with_suffix(&self, s: u8) -> Word {
        let mut w = self.clone();
        w.0.push(s);
        w
    }

    pub fn with_prefix(&self, s: u8) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(s);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// Whether `pattern` occurs as a consecutive factor.
    pub fn contains_factor(&self, pattern: &[u8]) -> bool {
        pattern.is_empty() || self.0.windows(pattern.len()).any(|w| w == pattern)
    }

    /// Parses generator names; single-character alphabets may be written run
    /// together (`"rst"`), otherwise names are separated by `.`.
    /// The empty string, `"e"` (when `e` is not a generator) and `"1"` denote the identity.
    pub fn parse(p: &CoxeterPresentation, text: &str) -> Result<Word, CoxeterError> {
        let text = text.trim();
        if text.is_empty() || text == "1" || (text == "e" && p.generator("e").is_none()) {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        if p.compact_names() && !text.contains('.') {
            for c in text.chars() {
                let g = p
                    .generator(&c.to_string())
                    .ok_or_else(|| CoxeterError::UnknownGenerator(c.to_string()))?;
                letters.push(g as u8);
            }
        } else {
            for part in text.split('.').filter(|s| !s.is_empty()) {
                let g = p
                    .generator(part)
                    .ok_or_else(|| CoxeterError::UnknownGenerator(part.to_string()))?;
                letters.push(g as u8);
            }
        }
        Ok(Word(letters))
    }

    /// Renders with generator names; the identity renders as the empty string.
    pub fn format(&self, p: &CoxeterPresentation) -> String {
        let names = p.generator_names();
        let sep = if p.compact_names() { "" } else { "." };
        self.0
            .iter()
            .map(|&g| names[g as usize].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

/// A set of generators as a bitmask (rank ≤ 32).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(pub u32);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn singleton(s: usize) -> Self {
        GenSet(1 << s)
    }

    pub fn pair(s: usize, t: usize) -> Self {
        GenSet((1 << s) | (1 << t))
    }

    pub fn contains(self, s: usize) -> bool {
        self.0 & (1 << s) != 0
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&s| self.contains(s))
    }

    pub fn format(self, p: &CoxeterPresentation) -> String {
        let names = p.generator_names();
        let sep = if p.compact_names() { "" } else { "." };
        self.iter()
            .map(|s| names[s].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn parse(p: &CoxeterPresentation, text: &str) -> Result<GenSet, CoxeterError> {
        let w = Word::parse(p, text)?;
        let mut g = GenSet::EMPTY;
        for &s in w.letters() {
            g.insert(s as usize);
        }
        Ok(g)
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}
