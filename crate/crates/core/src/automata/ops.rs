//! Subset construction, minimization, boolean products and counting.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;

use super::fsa::Fsa;
use super::AutomataError;

pub const DEFAULT_STATE_CAP: usize = 2_000_000;

/// Subset construction (with ε-closures); only nonempty subsets become states.
pub fn determinize(a: &Fsa, cap: usize) -> Result<Fsa, AutomataError> {
    if a.is_deterministic() {
        return Ok(a.clone());
    }
    let k = a.alphabet().len();
    let mut start = BTreeSet::from([a.initial()]);
    a.eps_closure(&mut start);
    let start: Vec<u32> = start.into_iter().collect();
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut subsets = vec![start.clone()];
    index.insert(start, 0);
    let mut out = Fsa::new(a.alphabet().clone(), 1);
    let mut next = 0;
    let mut buckets: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); k];
    while next < subsets.len() {
        let cur = subsets[next].clone();
        if cur.iter().any(|&q| a.is_accepting(q)) {
            out.set_accepting(next as u32, true);
        }
        for b in buckets.iter_mut() {
            b.clear();
        }
        for &q in &cur {
            for &(sym, t) in a.edges(q) {
                buckets[sym as usize].insert(t);
            }
        }
        for (sym, bucket) in buckets.iter_mut().enumerate() {
            if bucket.is_empty() {
                continue;
            }
            a.eps_closure(bucket);
            let key: Vec<u32> = bucket.iter().copied().collect();
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= cap {
                        return Err(AutomataError::StateBlowup { cap });
                    }
                    let id = out.add_state();
                    index.insert(key.clone(), id);
                    subsets.push(key);
                    id
                }
            };
            out.add_edge(next as u32, sym as u32, id);
        }
        next += 1;
    }
    Ok(out)
}

/// Unique minimal trim DFA, states numbered in breadth-first order from the
/// initial state visiting symbols in increasing order. The empty language
/// gives a single non-accepting state.
pub fn minimize(a: &Fsa) -> Fsa {
    assert!(
        a.is_deterministic(),
        "minimize needs a deterministic automaton"
    );
    let reach = a.reachable();
    let coreach = a.coreachable();
    let live: Vec<bool> = reach.iter().zip(&coreach).map(|(x, y)| *x && *y).collect();
    if !live[a.initial() as usize] {
        return Fsa::empty(a.alphabet().clone());
    }
    let n = a.num_states();
    let k = a.alphabet().len();
    const NONE: u32 = u32::MAX;
    // Moore refinement on live states; missing transitions go to an implicit dead class.
    let states: Vec<u32> = (0..n as u32).filter(|&q| live[q as usize]).collect();
    let mut class = vec![NONE; n];
    for &q in &states {
        class[q as usize] = a.is_accepting(q) as u32;
    }
    let mut num_classes = {
        let mut c: Vec<u32> = states.iter().map(|&q| class[q as usize]).collect();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let mut sig_index: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut new_class = vec![NONE; n];
        for &q in &states {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q as usize]);
            let mut edges = a.edges(q).iter().peekable();
            for sym in 0..k as u32 {
                let mut target = NONE;
                if let Some(&&(b, t)) = edges.peek() {
                    if b == sym {
                        if live[t as usize] {
                            target = class[t as usize];
                        }
                        edges.next();
                    }
                }
                sig.push(target);
            }
            let len = sig_index.len() as u32;
            new_class[q as usize] = *sig_index.entry(sig).or_insert(len);
        }
        let count = sig_index.len();
        class = new_class;
        if count == num_classes {
            break;
        }
        num_classes = count;
    }
    // Canonical numbering by BFS over class representatives.
    let mut rep = vec![NONE; num_classes];
    for &q in &states {
        if rep[class[q as usize] as usize] == NONE {
            rep[class[q as usize] as usize] = q;
        }
    }
    let mut order = vec![NONE; num_classes];
    let mut queue = VecDeque::new();
    let c0 = class[a.initial() as usize];
    order[c0 as usize] = 0;
    queue.push_back(c0);
    let mut count = 1u32;
    let mut edges_out: Vec<(u32, u32, u32)> = Vec::new();
    let mut accept = Vec::new();
    while let Some(c) = queue.pop_front() {
        let q = rep[c as usize];
        if a.is_accepting(q) {
            accept.push(order[c as usize]);
        }
        for &(sym, t) in a.edges(q) {
            if !live[t as usize] {
                continue;
            }
            let ct = class[t as usize];
            if order[ct as usize] == NONE {
                order[ct as usize] = count;
                count += 1;
                queue.push_back(ct);
            }
            edges_out.push((order[c as usize], sym, order[ct as usize]));
        }
    }
    let mut out = Fsa::new(a.alphabet().clone(), count as usize);
    for (p, sym, t) in edges_out {
        out.add_edge(p, sym, t);
    }
    for q in accept {
        out.set_accepting(q, true);
    }
    out
}

pub fn determinize_minimize(a: &Fsa, cap: usize) -> Result<Fsa, AutomataError> {
    Ok(minimize(&determinize(a, cap)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersection,
    Difference,
}

fn check_alphabets(a: &Fsa, b: &Fsa) -> Result<(), AutomataError> {
    if a.alphabet() != b.alphabet() {
        return Err(AutomataError::AlphabetMismatch);
    }
    Ok(())
}

/// Product construction followed by minimization.
pub fn boolean(op: BoolOp, a: &Fsa, b: &Fsa, cap: usize) -> Result<Fsa, AutomataError> {
    check_alphabets(a, b)?;
    let a = determinize(a, cap)?;
    let b = determinize(b, cap)?;
    const NONE: u32 = u32::MAX;
    let k = a.alphabet().len() as u32;
    let mut index: HashMap<(u32, u32), u32> = HashMap::new();
    let mut pairs = vec![(a.initial(), b.initial())];
    index.insert(pairs[0], 0);
    let mut out = Fsa::new(a.alphabet().clone(), 1);
    let mut next = 0;
    while next < pairs.len() {
        let (p, q) = pairs[next];
        let acc_a = p != NONE && a.is_accepting(p);
        let acc_b = q != NONE && b.is_accepting(q);
        let acc = match op {
            BoolOp::Union => acc_a || acc_b,
            BoolOp::Intersection => acc_a && acc_b,
            BoolOp::Difference => acc_a && !acc_b,
        };
        out.set_accepting(next as u32, acc);
        for sym in 0..k {
            let pa = if p == NONE {
                NONE
            } else {
                a.step(p, sym).unwrap_or(NONE)
            };
            let qb = if q == NONE {
                NONE
            } else {
                b.step(q, sym).unwrap_or(NONE)
            };
            let alive = match op {
                BoolOp::Union => pa != NONE || qb != NONE,
                BoolOp::Intersection => pa != NONE && qb != NONE,
                BoolOp::Difference => pa != NONE,
            };
            if !alive {
                continue;
            }
            let key = (pa, qb);
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if pairs.len() >= cap {
                        return Err(AutomataError::StateBlowup { cap });
                    }
                    let id = out.add_state();
                    index.insert(key, id);
                    pairs.push(key);
                    id
                }
            };
            out.add_edge(next as u32, sym, id);
        }
        next += 1;
    }
    Ok(minimize(&out))
}

pub fn union(a: &Fsa, b: &Fsa) -> Result<Fsa, AutomataError> {
    boolean(BoolOp::Union, a, b, DEFAULT_STATE_CAP)
}

pub fn intersection(a: &Fsa, b: &Fsa) -> Result<Fsa, AutomataError> {
    boolean(BoolOp::Intersection, a, b, DEFAULT_STATE_CAP)
}

pub fn difference(a: &Fsa, b: &Fsa) -> Result<Fsa, AutomataError> {
    boolean(BoolOp::Difference, a, b, DEFAULT_STATE_CAP)
}

/// `L(a) ⊆ L(b)`.
pub fn is_subset(a: &Fsa, b: &Fsa) -> Result<bool, AutomataError> {
    Ok(difference(a, b)?.is_empty_language())
}

/// Language equality, by comparing canonical minimal automata.
pub fn are_equivalent(a: &Fsa, b: &Fsa) -> Result<bool, AutomataError> {
    check_alphabets(a, b)?;
    let ma = determinize_minimize(a, DEFAULT_STATE_CAP)?;
    let mb = determinize_minimize(b, DEFAULT_STATE_CAP)?;
    Ok(ma == mb)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub is_empty: bool,
    pub states: usize,
    pub transitions: usize,
    /// `counts[n]` = number of accepted words of length `n`.
    pub counts: Vec<BigUint>,
}

/// Emptiness and exact word counts up to `max_len` (determinizing first if needed).
pub fn analyze(a: &Fsa, max_len: usize) -> Result<Analysis, AutomataError> {
    let d = determinize(a, DEFAULT_STATE_CAP)?;
    let n = d.num_states();
    let mut vec = vec![BigUint::zero(); n];
    vec[d.initial() as usize] = BigUint::from(1u32);
    let mut counts = Vec::with_capacity(max_len + 1);
    for step in 0..=max_len {
        let total: BigUint = d.accepting_states().map(|q| &vec[q as usize]).sum();
        counts.push(total);
        if step == max_len {
            break;
        }
        let mut next = vec![BigUint::zero(); n];
        for q in 0..n {
            if vec[q].is_zero() {
                continue;
            }
            for &(_, t) in d.edges(q as u32) {
                next[t as usize] += &vec[q];
            }
        }
        vec = next;
    }
    Ok(Analysis {
        is_empty: d.is_empty_language(),
        states: d.num_states(),
        transitions: d.num_transitions(),
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fsa::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(vec!["a".into(), "b".into()])
    }

    /// Words over {a,b} whose number of a's is ≡ r mod m.
    fn count_a(m: u32, r: u32) -> Fsa {
        let mut f = Fsa::new(ab(), m as usize);
        for q in 0..m {
            f.add_edge(q, 0, (q + 1) % m);
            f.add_edge(q, 1, q);
        }
        f.set_accepting(r, true);
        f
    }

    #[test]
    fn minimize_merges_equivalent_states() {
        // Mod 4 counter accepting residues {0, 2} is the mod 2 counter.
        let mut f = count_a(4, 0);
        f.set_accepting(2, true);
        let m = minimize(&f);
        assert_eq!(m.num_states(), 2);
        assert_eq!(m, minimize(&count_a(2, 0)));
        assert_eq!(minimize(&m), m);
    }

    #[test]
    fn determinize_reverse() {
        let f = Fsa::from_words(ab(), &[vec![0, 1, 1], vec![1]]);
        let r = determinize(&f.reverse(), DEFAULT_STATE_CAP).unwrap();
        assert!(r.is_deterministic());
        assert!(r.accepts(&[1, 1, 0]) && r.accepts(&[1]) && !r.accepts(&[0, 1, 1]));
        assert!(matches!(
            determinize(&f.reverse(), 1),
            Err(AutomataError::StateBlowup { .. })
        ));
    }

    #[test]
    fn boolean_algebra() {
        let even = count_a(2, 0);
        let odd = count_a(2, 1);
        assert!(intersection(&even, &odd).unwrap().is_empty_language());
        let all = union(&even, &odd).unwrap();
        assert_eq!(all.num_states(), 1);
        assert!(are_equivalent(&difference(&all, &odd).unwrap(), &even).unwrap());
        assert!(is_subset(&even, &all).unwrap());
        assert!(!is_subset(&all, &even).unwrap());
        let other = Fsa::empty(Alphabet::new(vec!["x".into()]));
        assert_eq!(union(&even, &other), Err(AutomataError::AlphabetMismatch));
    }

    #[test]
    fn counting() {
        let all = union(&count_a(2, 0), &count_a(2, 1)).unwrap();
        let an = analyze(&all, 10).unwrap();
        assert_eq!(an.counts[10], BigUint::from(1024u32));
        let e = analyze(&Fsa::empty(ab()), 3).unwrap();
        assert!(e.is_empty && e.counts.iter().all(|c| c.is_zero()));
    }
}
