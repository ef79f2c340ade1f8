//! Balls of elements around the identity in the Cayley graph.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::group::{CoxeterGroup, Element};
use super::word::{GenSet, Word};
use super::CoxeterError;

/// All elements of length at most `radius`, sorted by (length, ShortLex).
#[derive(Debug, Clone)]
pub struct ElementBall {
    group: CoxeterGroup,
    radius: usize,
    elements: Vec<Element>,
    index: HashMap<Word, u32>,
    right: Vec<u32>,
    left: Vec<u32>,
    level_start: Vec<usize>,
}

pub const OUTSIDE: u32 = u32::MAX;

/// One line of the ball cache.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallRecord {
    pub length: usize,
    pub word: String,
    pub left: String,
    pub right: String,
}

impl ElementBall {
    pub fn new(
        group: &CoxeterGroup,
        radius: usize,
        cap: Option<usize>,
    ) -> Result<Self, CoxeterError> {
        let n = group.rank();
        let mut elements = vec![group.identity()];
        let mut level_start = vec![0, 1];
        let mut frontier = vec![group.identity()];
        for len in 1..=radius {
            let mut next: Vec<Element> = Vec::new();
            let mut seen: HashMap<Word, ()> = HashMap::new();
            for w in &frontier {
                for s in 0..n {
                    if w.right.contains(s) {
                        continue;
                    }
                    let ws = group.right_mul(w, s);
                    debug_assert_eq!(ws.length(), len);
                    if seen.insert(ws.word.clone(), ()).is_none() {
                        next.push(ws);
                    }
                }
            }
            next.sort();
            if let Some(cap) = cap {
                if elements.len() + next.len() > cap {
                    return Err(CoxeterError::ResourceLimit {
                        what: format!("ball of radius {radius}"),
                        cap,
                    });
                }
            }
            elements.extend(next.iter().cloned());
            level_start.push(elements.len());
            frontier = next;
        }
        Ok(Self::assemble(group, radius, elements, level_start))
    }

    fn assemble(
        group: &CoxeterGroup,
        radius: usize,
        elements: Vec<Element>,
        level_start: Vec<usize>,
    ) -> Self {
        let n = group.rank();
        let index: HashMap<Word, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.word.clone(), i as u32))
            .collect();
        let mut right = vec![OUTSIDE; elements.len() * n];
        let mut left = vec![OUTSIDE; elements.len() * n];
        for (i, w) in elements.iter().enumerate() {
            for s in 0..n {
                let ws = group.right_mul(w, s);
                if let Some(&j) = index.get(&ws.word) {
                    right[i * n + s] = j;
                }
                let sw = group.left_mul(s, w);
                if let Some(&j) = index.get(&sw.word) {
                    left[i * n + s] = j;
                }
            }
        }
        ElementBall {
            group: group.clone(),
            radius,
            elements,
            index,
            right,
            left,
            level_start,
        }
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).map(|&i| i as usize)
    }

    /// Index of the element represented by an arbitrary word, if it lies in the ball.
    pub fn find(&self, w: &Word) -> Option<usize> {
        self.index_of(&self.group.normal_form(w).word)
    }

    /// Indices of the elements of length exactly `len`.
    pub fn level(&self, len: usize) -> std::ops::Range<usize> {
        if len > self.radius {
            return 0..0;
        }
        self.level_start[len]..self.level_start[len + 1]
    }

    pub fn counts_by_length(&self) -> Vec<usize> {
        (0..=self.radius).map(|l| self.level(l).len()).collect()
    }

    /// Index of `w·s`, if inside the ball.
    pub fn right_mul(&self, i: usize, s: usize) -> Option<usize> {
        let j = self.right[i * self.group.rank() + s];
        (j != OUTSIDE).then_some(j as usize)
    }

    /// Index of `s·w`, if inside the ball.
    pub fn left_mul(&self, s: usize, i: usize) -> Option<usize> {
        let j = self.left[i * self.group.rank() + s];
        (j != OUTSIDE).then_some(j as usize)
    }

    pub fn records(&self) -> Vec<BallRecord> {
        let p = self.group.presentation();
        self.elements
            .iter()
            .map(|e| BallRecord {
                length: e.length(),
                word: e.word.format(p),
                left: format_set(e.left, p),
                right: format_set(e.right, p),
            })
            .collect()
    }

    /// Line-delimited `length <tab> word <tab> left <tab> right`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for r in self.records() {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", r.length, r.word, r.left, r.right);
        }
        out
    }

    /// Rebuilds a ball from cached records, checking every record against the group.
    pub fn from_tsv(group: &CoxeterGroup, radius: usize, text: &str) -> Result<Self, CoxeterError> {
        let p = group.presentation();
        let mut elements = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let bad = |why: &str| CoxeterError::BadRecord(format!("line {}: {why}", lineno + 1));
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(bad("expected 4 tab-separated fields"));
            }
            let length: usize = fields[0].parse().map_err(|_| bad("bad length"))?;
            let word = Word::parse(p, fields[1])?;
            let e = group.normal_form(&word);
            if e.word != word || e.length() != length {
                return Err(bad("word is not a normal form of the stated length"));
            }
            if format_set(e.left, p) != fields[2] || format_set(e.right, p) != fields[3] {
                return Err(bad("descent sets disagree"));
            }
            elements.push(e);
        }
        let mut level_start = vec![0];
        for len in 0..=radius {
            let end = level_start[len]
                + elements[level_start[len]..]
                    .iter()
                    .take_while(|e| e.length() == len)
                    .count();
            level_start.push(end);
        }
        if *level_start.last().unwrap() != elements.len()
            || !elements.windows(2).all(|w| w[0] < w[1])
        {
            return Err(CoxeterError::BadRecord(
                "records are not a sorted ball".into(),
            ));
        }
        let ball = Self::assemble(group, radius, elements, level_start);
        // Completeness: every neighbour of a non-boundary element must be present.
        for i in 0..ball.len() {
            if ball.element(i).length() < radius {
                for s in 0..group.rank() {
                    if ball.right_mul(i, s).is_none() {
                        return Err(CoxeterError::BadRecord("ball is missing elements".into()));
                    }
                }
            }
        }
        Ok(ball)
    }
}

fn format_set(g: GenSet, p: &super::CoxeterPresentation) -> String {
    let names = p.generator_names();
    let v: Vec<&str> = g.iter().map(|s| names[s].as_str()).collect();
    format!("{{{}}}", v.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterPresentation;

    #[test]
    fn small_balls() {
        let g = CoxeterGroup::new(CoxeterPresentation::from_angles("W237", &[3, 7, 2]).unwrap());
        assert_eq!(ElementBall::new(&g, 0, None).unwrap().len(), 1);
        assert_eq!(ElementBall::new(&g, 1, None).unwrap().len(), 4);
        let b = ElementBall::new(&g, 2, None).unwrap();
        // 9 two-letter words: rr,ss,tt collapse, rt=tr, leaving rs,sr,st,ts,rt.
        assert_eq!(b.counts_by_length(), vec![1, 3, 5]);
        assert!(ElementBall::new(&g, 6, Some(10)).is_err());
    }

    #[test]
    fn tsv_round_trip() {
        let g =
            CoxeterGroup::new(CoxeterPresentation::from_angles("W2224", &[2, 2, 2, 4]).unwrap());
        let b = ElementBall::new(&g, 5, None).unwrap();
        let text = b.to_tsv();
        let back = ElementBall::from_tsv(&g, 5, &text).unwrap();
        assert_eq!(back.elements(), b.elements());
        assert_eq!(back.to_tsv(), text);
        let truncated: String = text.lines().take(7).map(|l| format!("{l}\n")).collect();
        assert!(ElementBall::from_tsv(&g, 5, &truncated).is_err());
    }
}
