//! Automata recognising words that contain a fixed factor.

use super::fsa::{Alphabet, Fsa};

/// Deterministic matcher for `.*pattern.*` built from the failure function.
pub fn factor_matcher(alphabet: Alphabet, pattern: &[u32]) -> Fsa {
    let m = pattern.len();
    let k = alphabet.len() as u32;
    let mut failure = vec![0usize; m];
    let mut j = 0;
    for i in 1..m {
        while j > 0 && pattern[i] != pattern[j] {
            j = failure[j - 1];
        }
        if pattern[i] == pattern[j] {
            j += 1;
        }
        failure[i] = j;
    }
    let mut delta = vec![vec![0u32; k as usize]; m + 1];
    for state in 0..=m {
        for a in 0..k {
            delta[state][a as usize] = if state == m {
                m as u32
            } else if pattern[state] == a {
                state as u32 + 1
            } else if state == 0 {
                0
            } else {
                delta[failure[state - 1]][a as usize]
            };
        }
    }
    let mut fsa = Fsa::new(alphabet, m + 1);
    for (state, row) in delta.iter().enumerate() {
        for (a, &t) in row.iter().enumerate() {
            fsa.add_edge(state as u32, a as u32, t);
        }
    }
    fsa.set_accepting(m as u32, true);
    fsa
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_factor(w: &[u32], p: &[u32]) -> bool {
        p.is_empty() || w.windows(p.len()).any(|x| x == p)
    }

    #[test]
    fn matches_naive_search() {
        let alphabet = Alphabet::new(vec!["a".into(), "b".into(), "c".into()]);
        let patterns: [&[u32]; 5] = [&[], &[0], &[0, 2], &[1, 2, 1, 2, 1, 2, 1], &[0, 0, 1, 0, 0]];
        for p in patterns {
            let f = factor_matcher(alphabet.clone(), p);
            assert!(f.is_deterministic());
            // All words of length ≤ 7.
            let mut words: Vec<Vec<u32>> = vec![vec![]];
            for _ in 0..7 {
                let mut next = Vec::new();
                for w in &words {
                    assert_eq!(f.accepts(w), has_factor(w, p), "{w:?} {p:?}");
                    for a in 0..3 {
                        let mut v = w.clone();
                        v.push(a);
                        next.push(v);
                    }
                }
                words = next;
            }
        }
    }
}
