//! Small roots of the standard geometric representation and the action of the
//! simple reflections on them.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use super::field::{FieldScalar, RealCyclotomicField};
use super::presentation::{CoxeterPresentation, Order};

/// A positive root written in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub coefficients: Vec<FieldScalar>,
    pub depth: u32,
}

/// Image of a small root under a simple reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootAction {
    Root(u32),
    /// `s(α_s) = −α_s`.
    NegativeSimple,
    /// The image is a positive root that is not small.
    Escaped,
}

#[derive(Debug, Clone)]
pub struct SmallRootTable {
    rank: usize,
    field: RealCyclotomicField,
    /// `2B(α_s, α_t)`.
    form: Vec<Vec<FieldScalar>>,
    roots: Vec<Root>,
    action: Vec<RootAction>,
}

impl SmallRootTable {
    pub fn new(p: &CoxeterPresentation) -> Self {
        let n = p.rank();
        let field = RealCyclotomicField::new(p.field_conductor());
        let mut form = vec![vec![FieldScalar::zero(); n]; n];
        for s in 0..n {
            for t in 0..n {
                form[s][t] = match p.order(s, t) {
                    Order::Finite(1) => FieldScalar::from_int(2),
                    Order::Finite(m) => field.neg(&field.two_cos_pi_over(m)),
                    Order::Infinite => FieldScalar::from_int(-2),
                };
            }
        }
        let mut table = SmallRootTable {
            rank: n,
            field,
            form,
            roots: Vec::new(),
            action: Vec::new(),
        };
        table.close();
        table
    }

    /// `2B(α_s, β)`.
    pub fn pairing(&self, s: usize, beta: &[FieldScalar]) -> FieldScalar {
        let f = &self.field;
        let mut acc = FieldScalar::zero();
        for (t, c) in beta.iter().enumerate() {
            if !c.is_zero() && !self.form[s][t].is_zero() {
                acc = f.add(&acc, &f.mul(c, &self.form[s][t]));
            }
        }
        acc
    }

    fn reflect(&self, s: usize, beta: &[FieldScalar], c: &FieldScalar) -> Vec<FieldScalar> {
        let mut out = beta.to_vec();
        out[s] = self.field.sub(&out[s], c);
        out
    }

    fn close(&mut self) {
        let n = self.rank;
        let mut index: HashMap<Vec<FieldScalar>, u32> = HashMap::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            let mut v = vec![FieldScalar::zero(); n];
            v[s] = FieldScalar::from_int(1);
            index.insert(v.clone(), s as u32);
            self.roots.push(Root {
                coefficients: v,
                depth: 1,
            });
            queue.push_back(s);
        }
        // Breadth-first by depth: β small, −2 < 2B(α_s,β) < 0 ⇒ sβ small of depth one more.
        while let Some(i) = queue.pop_front() {
            for s in 0..n {
                let beta = self.roots[i].coefficients.clone();
                let c = self.pairing(s, &beta);
                if self.field.sign(&c) != Ordering::Less {
                    continue;
                }
                if self.field.cmp(&c, &FieldScalar::from_int(-2)) != Ordering::Greater {
                    continue;
                }
                let image = self.reflect(s, &beta, &c);
                if !index.contains_key(&image) {
                    let id = self.roots.len() as u32;
                    index.insert(image.clone(), id);
                    self.roots.push(Root {
                        coefficients: image,
                        depth: self.roots[i].depth + 1,
                    });
                    queue.push_back(id as usize);
                }
            }
        }
        let mut action = vec![RootAction::Escaped; self.roots.len() * n];
        for i in 0..self.roots.len() {
            for s in 0..n {
                if i == s {
                    action[i * n + s] = RootAction::NegativeSimple;
                    continue;
                }
                let beta = &self.roots[i].coefficients;
                let c = self.pairing(s, beta);
                let sign = self.field.sign(&c);
                if sign == Ordering::Equal {
                    action[i * n + s] = RootAction::Root(i as u32);
                } else if sign == Ordering::Greater
                    || self.field.cmp(&c, &FieldScalar::from_int(-2)) == Ordering::Greater
                {
                    let image = self.reflect(s, beta, &c);
                    let j = *index
                        .get(&image)
                        .expect("small roots are closed under depth-lowering reflections");
                    action[i * n + s] = RootAction::Root(j);
                }
            }
        }
        self.action = action;
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn field(&self) -> &RealCyclotomicField {
        &self.field
    }

    /// Index of the simple root `α_s` (simple roots come first).
    pub fn simple(&self, s: usize) -> u32 {
        s as u32
    }

    pub fn act(&self, root: u32, s: usize) -> RootAction {
        self.action[root as usize * self.rank + s]
    }

    /// Root coordinates as floating point numbers.
    pub fn approximate(&self, root: u32) -> Vec<f64> {
        self.roots[root as usize]
            .coefficients
            .iter()
            .map(|c| self.field.to_f64(c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::AngleDenominator;

    #[test]
    fn simple_roots_present() {
        let p = CoxeterPresentation::from_angles("W237", &[3, 7, 2]).unwrap();
        let t = SmallRootTable::new(&p);
        for s in 0..3 {
            assert_eq!(t.roots()[s].depth, 1);
            assert_eq!(t.act(t.simple(s), s), RootAction::NegativeSimple);
        }
        assert!(t.len() > 3);
    }

    #[test]
    fn free_pairs_only_have_simple_roots() {
        let a = AngleDenominator::Ideal;
        let p = CoxeterPresentation::polygon("free", &[a, a, a]).unwrap();
        let t = SmallRootTable::new(&p);
        assert_eq!(t.len(), 3);
        for r in 0..3u32 {
            for s in 0..3usize {
                if r as usize != s {
                    assert_eq!(t.act(r, s), RootAction::Escaped);
                }
            }
        }
    }

    #[test]
    fn action_is_involutive_on_small_roots() {
        for angles in [
            [3u32, 7, 2].as_slice(),
            &[2, 2, 2, 4],
            &[4, 4, 4],
            &[2, 3, 8],
        ] {
            let p = CoxeterPresentation::from_angles("g", angles).unwrap();
            let t = SmallRootTable::new(&p);
            for r in 0..t.len() as u32 {
                for s in 0..p.rank() {
                    if let RootAction::Root(q) = t.act(r, s) {
                        assert_eq!(t.act(q, s), RootAction::Root(r));
                    }
                }
            }
        }
    }
}
