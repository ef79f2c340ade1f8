//! Kazhdan–Lusztig polynomials by the classical recursion on a right descent.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::coxeter::{CoxeterGroup, Element, Word};
use crate::kl::KlTable;

/// Elements of length ≤ `max_len` with Bruhat order from subexpressions and
/// `P_{v,w}` by the classical recursion.
pub struct ClassicalKl {
    group: CoxeterGroup,
    elements: Vec<Element>,
    index: HashMap<Word, usize>,
    /// `below[w][v]`: `v ≤ w`.
    below: Vec<Vec<bool>>,
    memo: RefCell<HashMap<(usize, usize), Vec<i64>>>,
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, sign: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += sign * c;
    }
}

impl ClassicalKl {
    pub fn new(group: &CoxeterGroup, max_len: usize) -> Self {
        let mut elements = vec![group.identity()];
        let mut index = HashMap::new();
        index.insert(Word::empty(), 0);
        let mut frontier = vec![0];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for &i in &frontier {
                for s in 0..group.rank() {
                    let e = group.right_mul(&elements[i], s);
                    if e.length() > elements[i].length() && !index.contains_key(&e.word) {
                        index.insert(e.word.clone(), elements.len());
                        next.push(elements.len());
                        elements.push(e);
                    }
                }
            }
            frontier = next;
        }
        let n = elements.len();
        let below = elements
            .iter()
            .map(|w| {
                let letters = w.word.letters();
                let mut row = vec![false; n];
                for mask in 0u64..(1u64 << letters.len()) {
                    let sub: Vec<u8> = (0..letters.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| letters[i])
                        .collect();
                    let v = group.normal_form(&Word::new(sub));
                    row[index[&v.word]] = true;
                }
                row
            })
            .collect();
        ClassicalKl {
            group: group.clone(),
            elements,
            index,
            below,
            memo: RefCell::new(HashMap::new()),
        }
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

    pub fn bruhat_leq(&self, v: usize, w: usize) -> bool {
        self.below[w][v]
    }

    fn mul(&self, v: usize, s: usize) -> usize {
        self.index[&self.group.right_mul(&self.elements[v], s).word]
    }

    fn mu(&self, z: usize, w: usize) -> i64 {
        let d = self.elements[w].length() as i64 - self.elements[z].length() as i64;
        if d <= 0 || d % 2 == 0 {
            return 0;
        }
        self.kl(z, w)
            .get(((d - 1) / 2) as usize)
            .copied()
            .unwrap_or(0)
    }

    /// Coefficients of `P_{v,w}`, lowest degree first, trailing zeros removed.
    pub fn kl(&self, v: usize, w: usize) -> Vec<i64> {
        if !self.bruhat_leq(v, w) {
            return vec![];
        }
        if v == w {
            return vec![1];
        }
        if let Some(p) = self.memo.borrow().get(&(v, w)) {
            return p.clone();
        }
        let lw = self.elements[w].length();
        let s = *self.elements[w].word.letters().last().unwrap() as usize;
        let ws = self.mul(w, s);
        let vs = self.mul(v, s);
        let c = usize::from(self.elements[vs].length() < self.elements[v].length());
        let mut p = Vec::new();
        add_shifted(&mut p, &self.kl(vs, ws), 1 - c, 1);
        add_shifted(&mut p, &self.kl(v, ws), c, 1);
        for z in 0..self.elements.len() {
            if z == ws || !self.bruhat_leq(z, ws) || !self.bruhat_leq(v, z) {
                continue;
            }
            if self.elements[self.mul(z, s)].length() > self.elements[z].length() {
                continue;
            }
            let m = self.mu(z, ws);
            if m != 0 {
                let lz = self.elements[z].length();
                add_shifted(&mut p, &self.kl(v, z), (lw - lz) / 2, -m);
            }
        }
        let p = trim(p);
        self.memo.borrow_mut().insert((v, w), p.clone());
        p
    }

    pub fn find(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Whether this recursion and `table` agree on `P_{v,w}` and on `v ≤ w`,
    /// `v`, `w` given as indices into `table`'s ball.
    pub fn cross_check(&self, table: &KlTable, v: usize, w: usize) -> bool {
        let ball = table.ball();
        let (Some(a), Some(b)) = (
            self.find(&ball.element(v).word),
            self.find(&ball.element(w).word),
        ) else {
            return false;
        };
        self.bruhat_leq(a, b) == table.bruhat_leq(v, w)
            && self.kl(a, b) == table.kl_poly(v, w).coeffs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterPresentation;

    #[test]
    fn dihedral_pieces_are_trivial() {
        let g = CoxeterGroup::new(CoxeterPresentation::from_angles("W237", &[3, 7, 2]).unwrap());
        let kl = ClassicalKl::new(&g, 5);
        let e = kl.find(&Word::empty()).unwrap();
        let w = kl.find(&g.parse("stst").unwrap()).unwrap();
        assert_eq!(kl.kl(e, w), vec![1]);
        let r = kl.find(&g.parse("r").unwrap()).unwrap();
        assert!(kl.kl(r, w).is_empty());
    }
}
