//! Synchronous pair automata with bounded word differences.

use std::collections::HashMap;

use super::fsa::{pair_symbol, unpair_symbol, Alphabet, Fsa};
use super::ops::{determinize, minimize};
use super::AutomataError;
use crate::coxeter::{CoxeterGroup, Element, Word};

/// Elements of length ≤ `bound` reached as word differences, with memoised transitions.
struct Differences<'g> {
    group: &'g CoxeterGroup,
    bound: usize,
    elements: Vec<Element>,
    index: HashMap<Word, u32>,
    memo: HashMap<(u32, u32), Option<u32>>,
}

impl<'g> Differences<'g> {
    fn new(group: &'g CoxeterGroup, bound: usize) -> Self {
        Differences {
            group,
            bound,
            elements: Vec::new(),
            index: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn intern(&mut self, e: Element) -> Option<u32> {
        if e.length() > self.bound {
            return None;
        }
        if let Some(&i) = self.index.get(&e.word) {
            return Some(i);
        }
        let i = self.elements.len() as u32;
        self.index.insert(e.word.clone(), i);
        self.elements.push(e);
        Some(i)
    }

    /// `x⁻¹·d·y` (= `x·d·y`), pads acting trivially.
    fn step(&mut self, d: u32, symbol: u32) -> Option<u32> {
        if let Some(&r) = self.memo.get(&(d, symbol)) {
            return r;
        }
        let n = self.group.rank();
        let (x, y) = unpair_symbol(n, symbol);
        let mut e = self.elements[d as usize].clone();
        if let Some(x) = x {
            e = self.group.left_mul(x, &e);
        }
        if let Some(y) = y {
            e = self.group.right_mul(&e, y);
        }
        let r = self.intern(e);
        self.memo.insert((d, symbol), r);
        r
    }
}

const RUNNING: u8 = 0;
const LEFT_ENDED: u8 = 1;
const RIGHT_ENDED: u8 = 2;

/// Padded pairs `(α, β)` with `α ∈ L(a)`, `β ∈ L(b)`, every synchronous difference
/// `ᾱᵢ⁻¹·offset·β̄ᵢ` of length ≤ `bound`, and final difference equal to `target`.
/// The shorter word is padded at the end.
pub fn pairs_with_target(
    group: &CoxeterGroup,
    a: &Fsa,
    b: &Fsa,
    bound: usize,
    offset: &Element,
    target: &Element,
    cap: usize,
) -> Result<Fsa, AutomataError> {
    let n = group.rank();
    let alphabet = Alphabet::pairs(group.presentation().generator_names());
    let a = determinize(a, cap)?;
    let b = determinize(b, cap)?;
    let mut diffs = Differences::new(group, bound);
    let Some(d0) = diffs.intern(offset.clone()) else {
        return Ok(Fsa::empty(alphabet));
    };
    let mut out = Fsa::new(alphabet, 1);
    let mut index: HashMap<(u32, u32, u32, u8), u32> = HashMap::new();
    let mut states = vec![(a.initial(), b.initial(), d0, RUNNING)];
    index.insert(states[0], 0);
    let mut next = 0;
    while next < states.len() {
        let (qa, qb, d, flag) = states[next];
        let at_target = diffs.elements[d as usize].word == target.word;
        if at_target && a.is_accepting(qa) && b.is_accepting(qb) {
            out.set_accepting(next as u32, true);
        }
        let xs: Vec<Option<usize>> = match flag {
            LEFT_ENDED => vec![None],
            _ => (0..n).map(Some).chain(std::iter::once(None)).collect(),
        };
        let ys: Vec<Option<usize>> = match flag {
            RIGHT_ENDED => vec![None],
            _ => (0..n).map(Some).chain(std::iter::once(None)).collect(),
        };
        for &x in &xs {
            for &y in &ys {
                if x.is_none() && y.is_none() {
                    continue;
                }
                let qa2 = match x {
                    Some(x) => match a.step(qa, x as u32) {
                        Some(t) => t,
                        None => continue,
                    },
                    None => {
                        if !a.is_accepting(qa) {
                            continue;
                        }
                        qa
                    }
                };
                let qb2 = match y {
                    Some(y) => match b.step(qb, y as u32) {
                        Some(t) => t,
                        None => continue,
                    },
                    None => {
                        if !b.is_accepting(qb) {
                            continue;
                        }
                        qb
                    }
                };
                let flag2 = match (x, y) {
                    (None, _) => LEFT_ENDED,
                    (_, None) => RIGHT_ENDED,
                    _ => RUNNING,
                };
                let sym = pair_symbol(n, x, y);
                let Some(d2) = diffs.step(d, sym) else {
                    continue;
                };
                let key = (qa2, qb2, d2, flag2);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= cap {
                            return Err(AutomataError::StateBlowup { cap });
                        }
                        let id = out.add_state();
                        index.insert(key, id);
                        states.push(key);
                        id
                    }
                };
                out.add_edge(next as u32, sym, id);
            }
        }
        next += 1;
    }
    Ok(minimize(&out))
}

/// Pairs with equal endpoints up to the offset: `ᾱ = offset·β̄`, differences bounded by `k`.
pub fn equal_endpoint_pairs(
    group: &CoxeterGroup,
    a: &Fsa,
    b: &Fsa,
    k: usize,
    offset: &Element,
    cap: usize,
) -> Result<Fsa, AutomataError> {
    pairs_with_target(group, a, b, k, offset, &group.identity(), cap)
}

/// Erases the second coordinate; a pad on the left becomes an ε-move.
pub fn project_first(p: &Fsa, group: &CoxeterGroup) -> Fsa {
    let n = group.rank();
    let names = group.presentation().generator_names().to_vec();
    p.map_symbols(Alphabet::new(names), |a| {
        unpair_symbol(n, a).0.map(|x| x as u32)
    })
}

/// Encodes a pair of words as a padded pair word.
pub fn pair_word(n: usize, alpha: &[u8], beta: &[u8]) -> Vec<u32> {
    let len = alpha.len().max(beta.len());
    (0..len)
        .map(|i| {
            pair_symbol(
                n,
                alpha.get(i).map(|&x| x as usize),
                beta.get(i).map(|&y| y as usize),
            )
        })
        .collect()
}
