//! Oracle suites run by `verify` and the acceptance tests.

use serde::Serialize;

use super::{
    braid_closure, oracle_classify, unique_reduced_census, Census, ClassicalKl, VerifyError,
};
use crate::automata::{Fsa, Languages};
use crate::cells::{CellLabel, ConjecturalPartition};
use crate::coxeter::{ElementBall, GenSet, DEAD};
use crate::kl::KlTable;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSuite {
    pub radius: usize,
    pub census: Census,
    /// Census on the ball two larger, for stabilisation.
    pub census_next: usize,
    pub elements_checked: usize,
    /// Elements where automaton and braid-closure labels differ.
    pub label_disagreements: Vec<String>,
    /// Elements where a Zero label does not match a single reduced expression.
    pub closure_disagreements: Vec<String>,
    pub words_checked: usize,
    /// Reduced words accepted by the wrong label automaton (or by none or several).
    pub fsa_disagreements: Vec<String>,
    /// Elements misplaced by a descent-class automaton.
    pub descent_disagreements: Vec<String>,
    pub partition_disjoint: bool,
    pub partition_union_is_red: bool,
}

impl OracleSuite {
    pub fn passed(&self) -> bool {
        self.label_disagreements.is_empty()
            && self.closure_disagreements.is_empty()
            && self.fsa_disagreements.is_empty()
            && self.descent_disagreements.is_empty()
            && self.partition_disjoint
            && self.partition_union_is_red
    }

    /// Whether the census stopped growing between the two radii; false when `C_0` is infinite.
    pub fn census_stable(&self) -> bool {
        self.census.count == self.census_next
    }
}

/// Descent sets `T` with nonempty `W^T`.
pub fn descent_types(langs: &Languages) -> Vec<GenSet> {
    let n = langs.group().rank();
    let mut v = vec![GenSet::EMPTY];
    v.extend((0..n).map(GenSet::singleton));
    for s in 0..n {
        for t in s + 1..n {
            if langs.is_descent_class(GenSet::pair(s, t)) {
                v.push(GenSet::pair(s, t));
            }
        }
    }
    v
}

/// Calls `f(word, ball index)` for every reduced word of length ≤ the ball radius.
pub fn for_each_reduced_word(ball: &ElementBall, mut f: impl FnMut(&[u8], usize)) {
    let g = ball.group();
    let dfa = g.dfa();
    let mut stack = vec![(dfa.initial(), 0usize, Vec::<u8>::new())];
    while let Some((q, i, w)) = stack.pop() {
        f(&w, i);
        if w.len() == ball.radius() {
            continue;
        }
        for s in 0..g.rank() {
            let q2 = dfa.step(q, s);
            if q2 != DEAD {
                let mut w2 = w.clone();
                w2.push(s as u8);
                stack.push((q2, ball.right_mul(i, s).unwrap(), w2));
            }
        }
    }
}

/// Braid-closure oracles against the automata on every element and reduced
/// word of `ball`; `label_fsas` are the label automata under test.
pub fn oracle_suite(
    partition: &ConjecturalPartition,
    label_fsas: &[(CellLabel, Fsa)],
    descent_fsas: &[(GenSet, Fsa)],
    ball: &ElementBall,
    cap: usize,
) -> Result<OracleSuite, VerifyError> {
    let g = ball.group();
    let p = g.presentation();
    let data = partition.data();
    let mut oracle = Vec::with_capacity(ball.len());
    let mut label_disagreements = Vec::new();
    let mut closure_disagreements = Vec::new();
    for w in ball.elements() {
        let o = oracle_classify(p, data, &w.word, cap)?;
        if partition.classify_element(w) != o {
            label_disagreements.push(g.format(&w.word));
        }
        let unique = braid_closure(p, &w.word, cap)?.len() == 1;
        if (o == CellLabel::Zero) != (unique && !w.is_identity()) {
            closure_disagreements.push(g.format(&w.word));
        }
        oracle.push(o);
    }
    let mut words_checked = 0;
    let mut fsa_disagreements = Vec::new();
    for_each_reduced_word(ball, |w, i| {
        words_checked += 1;
        let sym: Vec<u32> = w.iter().map(|&s| s as u32).collect();
        let accepted: Vec<CellLabel> = label_fsas
            .iter()
            .filter(|(_, f)| f.accepts(&sym))
            .map(|(l, _)| *l)
            .collect();
        if accepted != [oracle[i]] {
            fsa_disagreements.push(g.format(&crate::coxeter::Word::new(w.to_vec())));
        }
    });
    let mut descent_disagreements = Vec::new();
    for w in ball.elements() {
        for (t, f) in descent_fsas {
            if Languages::accepts(f, &w.word) != (w.left == *t) {
                descent_disagreements.push(format!("{} {}", g.format(&w.word), t.format(p)));
            }
        }
    }
    let check = partition
        .check()
        .map_err(|e| VerifyError::Inconsistent(e.to_string()))?;
    let census = unique_reduced_census(ball, cap)?;
    let bigger = ElementBall::new(g, ball.radius() + 2, None)
        .map_err(|e| VerifyError::Inconsistent(e.to_string()))?;
    let census_next = unique_reduced_census(&bigger, cap)?.count;
    Ok(OracleSuite {
        radius: ball.radius(),
        census,
        census_next,
        elements_checked: ball.len(),
        label_disagreements,
        closure_disagreements,
        words_checked,
        fsa_disagreements,
        descent_disagreements,
        partition_disjoint: check.pairwise_disjoint,
        partition_union_is_red: check.union_is_red,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KlSuite {
    pub radius: usize,
    pub pairs: usize,
    /// Pairs failing the recomputation identity or the degree bound.
    pub identity_failures: Vec<(String, String)>,
    pub classical_length: usize,
    pub classical_pairs: usize,
    pub classical_disagreements: Vec<(String, String)>,
}

impl KlSuite {
    pub fn passed(&self) -> bool {
        self.identity_failures.is_empty() && self.classical_disagreements.is_empty()
    }
}

/// Identity and degree checks on every Bruhat pair of `table`, and the
/// classical recursion on pairs with `l(w) ≤ classical_length`.
pub fn kl_suite(table: &KlTable, classical_length: usize) -> KlSuite {
    let ball = table.ball();
    let g = ball.group();
    let name = |i: usize| g.format(&ball.element(i).word);
    let mut identity_failures = Vec::new();
    let mut pairs = 0;
    for w in 0..ball.len() {
        for &v in table.lower_ideal(w) {
            let v = v as usize;
            pairs += 1;
            if !table.check_identity(v, w) || !table.check_degrees(v, w) {
                identity_failures.push((name(v), name(w)));
            }
        }
    }
    let len = classical_length.min(ball.radius());
    let classical = ClassicalKl::new(g, len);
    let small: Vec<usize> = (0..ball.len())
        .filter(|&i| ball.element(i).length() <= len)
        .collect();
    let mut classical_disagreements = Vec::new();
    for &w in &small {
        for &v in &small {
            if !classical.cross_check(table, v, w) {
                classical_disagreements.push((name(v), name(w)));
            }
        }
    }
    KlSuite {
        radius: ball.radius(),
        pairs,
        identity_failures,
        classical_length: len,
        classical_pairs: small.len() * small.len(),
        classical_disagreements,
    }
}
