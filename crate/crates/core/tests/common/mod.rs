//! Test-only oracles shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigUint;
use polycell::coxeter::{FieldScalar, Order, RealCyclotomicField};
use polycell::{CoxeterGroup, CoxeterPresentation};

pub fn w237() -> CoxeterGroup {
    CoxeterGroup::new(CoxeterPresentation::from_angles("W237", &[3, 7, 2]).unwrap())
}

pub fn w2224() -> CoxeterGroup {
    let p = CoxeterPresentation::from_json(
        r#"{"name": "W2224", "angles": [2, 2, 2, 4], "generators": ["a", "b", "c", "d"]}"#,
    )
    .unwrap();
    CoxeterGroup::new(p)
}

/// Column-major matrix of an element in the Tits representation: column `t` is `w(α_t)`.
pub type Matrix = Vec<FieldScalar>;

/// Exact Tits representation over ℚ(2cos π/N). Faithful, so matrix equality is the word problem,
/// and `l(ws) > l(w)` iff `w(α_s)` is a positive root.
pub struct Tits {
    field: RealCyclotomicField,
    n: usize,
    /// `2B(α_s, α_t)`.
    form: Vec<Vec<FieldScalar>>,
}

impl Tits {
    pub fn new(p: &CoxeterPresentation) -> Self {
        let field = RealCyclotomicField::new(p.field_conductor());
        let n = p.rank();
        let form = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        if s == t {
                            FieldScalar::from_int(2)
                        } else {
                            match p.order(s, t) {
                                Order::Finite(m) => field.neg(&field.two_cos_pi_over(m)),
                                Order::Infinite => FieldScalar::from_int(-2),
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        Tits { field, n, form }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> Matrix {
        let mut m = vec![FieldScalar::zero(); self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = FieldScalar::from_int(1);
        }
        m
    }

    fn column<'a>(&self, m: &'a Matrix, t: usize) -> &'a [FieldScalar] {
        &m[t * self.n..(t + 1) * self.n]
    }

    /// `w·s`: `ws(α_t) = w(α_t) − 2B(α_s, α_t)·w(α_s)`.
    pub fn right_mul(&self, m: &Matrix, s: usize) -> Matrix {
        let ws: Vec<FieldScalar> = self.column(m, s).to_vec();
        let mut out = m.clone();
        for t in 0..self.n {
            for i in 0..self.n {
                let d = self.field.mul(&self.form[s][t], &ws[i]);
                out[t * self.n + i] = self.field.sub(&m[t * self.n + i], &d);
            }
        }
        out
    }

    /// Whether `w(α_s)` is positive, i.e. `l(ws) > l(w)`.
    pub fn ascends(&self, m: &Matrix, s: usize) -> bool {
        let col = self.column(m, s);
        let first = col
            .iter()
            .map(|c| self.field.sign(c))
            .find(|&o| o != Ordering::Equal)
            .expect("roots are nonzero");
        first == Ordering::Greater
    }

    pub fn word(&self, letters: &[u8]) -> Matrix {
        letters
            .iter()
            .fold(self.identity(), |m, &s| self.right_mul(&m, s as usize))
    }

    pub fn is_reduced(&self, letters: &[u8]) -> bool {
        let mut m = self.identity();
        for &s in letters {
            if !self.ascends(&m, s as usize) {
                return false;
            }
            m = self.right_mul(&m, s as usize);
        }
        true
    }

    /// Elements by length up to `radius`, each with its number of reduced expressions.
    pub fn census(&self, radius: usize) -> Vec<Vec<(Matrix, BigUint)>> {
        let mut levels = vec![vec![(self.identity(), BigUint::from(1u32))]];
        for _ in 0..radius {
            let mut next: HashMap<Matrix, BigUint> = HashMap::new();
            let mut order = Vec::new();
            for (m, c) in levels.last().unwrap() {
                for s in 0..self.n {
                    if self.ascends(m, s) {
                        let ms = self.right_mul(m, s);
                        if !next.contains_key(&ms) {
                            order.push(ms.clone());
                        }
                        *next.entry(ms).or_default() += c;
                    }
                }
            }
            levels.push(
                order
                    .into_iter()
                    .map(|m| {
                        let c = next[&m].clone();
                        (m, c)
                    })
                    .collect(),
            );
        }
        levels
    }
}

/// Every word of length exactly `len` over `n` letters, in lexicographic order.
pub fn all_words(n: usize, len: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = n.pow(len as u32);
    (0..total).map(move |mut i| {
        let mut w = vec![0u8; len];
        for j in (0..len).rev() {
            w[j] = (i % n) as u8;
            i /= n;
        }
        w
    })
}
