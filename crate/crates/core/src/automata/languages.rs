//! Regular languages of reduced expressions: Red(W), pattern classes Red(X_μ),
//! descent classes Red(W^T) and left translates Red(w·X).

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use super::factor::factor_matcher;
use super::fsa::{Alphabet, Fsa};
use super::ops::{
    analyze, are_equivalent, determinize_minimize, intersection, minimize, DEFAULT_STATE_CAP,
};
use super::pairs::{equal_endpoint_pairs, pairs_with_target, project_first};
use super::AutomataError;
use crate::coxeter::{CoxeterGroup, Element, ElementBall, GenSet, Order, Word};

/// The small-root automaton as an [`Fsa`]; every state accepting.
pub fn canonical_fsa(group: &CoxeterGroup) -> Fsa {
    canonical_with_accepting(group, |_| true)
}

fn canonical_with_accepting(group: &CoxeterGroup, accept: impl Fn(GenSet) -> bool) -> Fsa {
    let dfa = group.dfa();
    let alphabet = Alphabet::new(group.presentation().generator_names().to_vec());
    let mut fsa = Fsa::new(alphabet, dfa.num_states());
    for q in 0..dfa.num_states() as u32 {
        for s in 0..group.rank() {
            let t = dfa.step(q, s);
            if t != crate::coxeter::DEAD {
                fsa.add_edge(q, s as u32, t);
            }
        }
        fsa.set_accepting(q, accept(dfa.right_descents(q)));
    }
    fsa
}

/// Number of reduced expressions of every element of a ball, by `red(w) = Σ_{s∈R(w)} red(ws)`.
pub fn reduced_word_counts(ball: &ElementBall) -> Vec<BigUint> {
    let mut red: Vec<BigUint> = Vec::with_capacity(ball.len());
    for w in 0..ball.len() {
        if w == 0 {
            red.push(BigUint::from(1u32));
            continue;
        }
        let mut c = BigUint::zero();
        for s in ball.element(w).right.iter() {
            c += &red[ball.right_mul(w, s).unwrap()];
        }
        red.push(c);
    }
    red
}

/// Language constructions for one group, sharing the minimal automaton of Red(W).
#[derive(Debug, Clone)]
pub struct Languages {
    group: CoxeterGroup,
    red: Arc<Fsa>,
    validated_k: Option<usize>,
    cap: usize,
}

impl Languages {
    pub fn new(group: &CoxeterGroup) -> Self {
        Languages {
            group: group.clone(),
            red: Arc::new(minimize(&canonical_fsa(group))),
            validated_k: None,
            cap: DEFAULT_STATE_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Minimal DFA of Red(W).
    pub fn red(&self) -> &Fsa {
        &self.red
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.red.alphabet()
    }

    pub fn validated_k(&self) -> Option<usize> {
        self.validated_k
    }

    /// Records a fellow-traveller constant validated elsewhere (e.g. loaded from a cache).
    pub fn set_validated_k(&mut self, k: usize) {
        self.validated_k = Some(k);
    }

    fn require_k(&self, k: usize) -> Result<(), AutomataError> {
        match self.validated_k {
            Some(v) if k >= v => Ok(()),
            _ => Err(AutomataError::KNotValidated(k)),
        }
    }

    pub fn word_symbols(w: &Word) -> Vec<u32> {
        w.letters().iter().map(|&s| s as u32).collect()
    }

    pub fn accepts(fsa: &Fsa, w: &Word) -> bool {
        fsa.accepts(&Self::word_symbols(w))
    }

    /// Reduced words containing `pattern` as a consecutive factor.
    pub fn factor_fsa(&self, pattern: &Word) -> Result<Fsa, AutomataError> {
        if !self.group.is_reduced(pattern) {
            return Err(AutomataError::PatternNotReduced(self.group.format(pattern)));
        }
        let matcher = factor_matcher(self.alphabet().clone(), &Self::word_symbols(pattern));
        intersection(&self.red, &matcher)
    }

    fn red_x_mu_unchecked(&self, pattern: &Word, k: usize) -> Result<Fsa, AutomataError> {
        let factor = self.factor_fsa(pattern)?;
        let pairs = equal_endpoint_pairs(
            &self.group,
            &self.red,
            &factor,
            k,
            &self.group.identity(),
            self.cap,
        )?;
        determinize_minimize(&project_first(&pairs, &self.group), self.cap)
    }

    /// All reduced expressions of elements having some reduced expression with factor `pattern`.
    pub fn red_x_mu(&self, pattern: &Word, k: usize) -> Result<Fsa, AutomataError> {
        self.require_k(k)?;
        self.red_x_mu_unchecked(pattern, k)
    }

    /// Red(w·X) for `X` the elements of `L(a)`, via pairs with offset `w` and difference bound `k + l(w)`.
    pub fn left_translate(&self, a: &Fsa, w: &Element, k: usize) -> Result<Fsa, AutomataError> {
        self.require_k(k)?;
        if w.is_identity() {
            return determinize_minimize(a, self.cap);
        }
        let pairs = equal_endpoint_pairs(&self.group, &self.red, a, k + w.length(), w, self.cap)?;
        determinize_minimize(&project_first(&pairs, &self.group), self.cap)
    }

    /// Whether `T` indexes a nonempty descent class: ∅, a singleton, or a pair with finite order.
    pub fn is_descent_class(&self, t: GenSet) -> bool {
        match t.len() {
            0 | 1 => true,
            2 => {
                let v: Vec<usize> = t.iter().collect();
                matches!(
                    self.group.presentation().order(v[0], v[1]),
                    Order::Finite(_)
                )
            }
            _ => false,
        }
    }

    /// Red(W^T): reduced expressions of elements with left descent set exactly `T`.
    ///
    /// Right descents are a function of the small-root state, so the words of
    /// elements with right descent set `T` form a union of states; reversing
    /// that language gives the left-descent class.
    pub fn descent_class_fsa(&self, t: GenSet) -> Result<Fsa, AutomataError> {
        if !self.is_descent_class(t) {
            return Err(AutomataError::InvalidDescentClass(
                t.format(self.group.presentation()),
            ));
        }
        let right = canonical_with_accepting(&self.group, |d| d == t);
        determinize_minimize(&right.reverse(), self.cap)
    }

    /// Checks the fellow-traveller property with constant `k` on all pairs of words
    /// of length ≤ `ball.radius()`: pairs of reduced expressions of one element, and
    /// pairs of reduced expressions of `w` and `ws`. Done by comparing the number of
    /// accepted pair words of each length with the number of such pairs.
    pub fn validate_k(&self, k: usize, ball: &ElementBall) -> Result<bool, AutomataError> {
        let radius = ball.radius();
        let red = reduced_word_counts(ball);
        let mut same = vec![BigUint::zero(); radius + 1];
        for w in 0..ball.len() {
            let lw = ball.element(w).length();
            same[lw] += &red[w] * &red[w];
        }
        let id = self.group.identity();
        let p = equal_endpoint_pairs(&self.group, &self.red, &self.red, k, &id, self.cap)?;
        if analyze(&p, radius)?.counts != same {
            return Ok(false);
        }
        for s in 0..self.group.rank() {
            let target = self.group.generator(s);
            let p =
                pairs_with_target(&self.group, &self.red, &self.red, k, &id, &target, self.cap)?;
            let counts = analyze(&p, radius)?.counts;
            let mut expected = vec![BigUint::zero(); radius + 1];
            for w in 0..ball.len() {
                if let Some(ws) = ball.right_mul(w, s) {
                    let len = ball.element(w).length().max(ball.element(ws).length());
                    expected[len] += &red[w] * &red[ws];
                }
            }
            if counts != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest `k ≤ max_k` that passes [`Self::validate_k`] on `ball` and for which
    /// Red(X_μ) is unchanged from `k` to `k + 1` for every pattern; records it.
    pub fn choose_k(
        &mut self,
        ball: &ElementBall,
        patterns: &[Word],
        max_k: usize,
    ) -> Result<usize, AutomataError> {
        for k in 1..=max_k {
            if !self.validate_k(k, ball)? {
                continue;
            }
            let mut stable = true;
            for p in patterns {
                if !are_equivalent(
                    &self.red_x_mu_unchecked(p, k)?,
                    &self.red_x_mu_unchecked(p, k + 1)?,
                )? {
                    stable = false;
                    break;
                }
            }
            if stable {
                self.validated_k = Some(k);
                return Ok(k);
            }
        }
        Err(AutomataError::KNotValidated(max_k))
    }
}
