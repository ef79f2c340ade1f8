//! Braid-move closures of reduced expressions.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::VerifyError;
use crate::cells::{CellLabel, DihedralData};
use crate::coxeter::{CoxeterPresentation, ElementBall, Order, Word};

/// All reduced expressions of one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSet {
    pub words: BTreeSet<Word>,
}

impl ClosureSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn any_contains(&self, pattern: &[u8]) -> bool {
        self.words.iter().any(|w| w.contains_factor(pattern))
    }
}

fn alternating(s: u8, t: u8, m: usize) -> Vec<u8> {
    (0..m).map(|i| if i % 2 == 0 { s } else { t }).collect()
}

/// Every word reachable from `w` by replacing an alternating factor `sts…` of
/// length `m(s,t)` by `tst…`. Does not check that `w` is reduced.
pub fn braid_closure(
    p: &CoxeterPresentation,
    w: &Word,
    cap: usize,
) -> Result<ClosureSet, VerifyError> {
    let n = p.rank();
    let mut moves: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if s != t {
                if let Order::Finite(m) = p.order(s, t) {
                    moves.push((
                        alternating(s as u8, t as u8, m as usize),
                        alternating(t as u8, s as u8, m as usize),
                    ));
                }
            }
        }
    }
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(u) = queue.pop_front() {
        let letters = u.letters();
        for (from, to) in &moves {
            if from.len() > letters.len() {
                continue;
            }
            for i in 0..=letters.len() - from.len() {
                if &letters[i..i + from.len()] == from.as_slice() {
                    let mut v = letters.to_vec();
                    v[i..i + to.len()].copy_from_slice(to);
                    let v = Word::new(v);
                    if !seen.contains(&v) {
                        if seen.len() >= cap {
                            return Err(VerifyError::ResourceLimit {
                                word: u.format(p),
                                cap,
                            });
                        }
                        seen.insert(v.clone());
                        queue.push_back(v);
                    }
                }
            }
        }
    }
    Ok(ClosureSet { words: seen })
}

/// Cell label read off the full braid closure of a reduced expression.
pub fn oracle_classify(
    p: &CoxeterPresentation,
    data: &DihedralData,
    w: &Word,
    cap: usize,
) -> Result<CellLabel, VerifyError> {
    if w.is_empty() {
        return Ok(CellLabel::Id);
    }
    let closure = braid_closure(p, w, cap)?;
    for level in (1..=data.levels()).rev() {
        for e in data.at_level(level) {
            let (s, t) = {
                let v: Vec<usize> = e.pair.iter().collect();
                (v[0] as u8, v[1] as u8)
            };
            let m = e.order as usize;
            if closure.any_contains(&alternating(s, t, m))
                || closure.any_contains(&alternating(t, s, m))
            {
                return Ok(CellLabel::Level(level));
            }
        }
    }
    if closure.len() == 1 {
        Ok(CellLabel::Zero)
    } else {
        Err(VerifyError::Inconsistent(w.format(p)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub radius: usize,
    pub count: usize,
    pub elements: Vec<String>,
}

/// Non-identity elements of the ball with exactly one reduced expression.
pub fn unique_reduced_census(ball: &ElementBall, cap: usize) -> Result<Census, VerifyError> {
    let p = ball.group().presentation();
    let mut elements = Vec::new();
    for w in ball.elements().iter().filter(|w| !w.is_identity()) {
        if braid_closure(p, &w.word, cap)?.len() == 1 {
            elements.push(w.word.format(p));
        }
    }
    Ok(Census {
        radius: ball.radius(),
        count: elements.len(),
        elements,
    })
}
