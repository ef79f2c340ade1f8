//! Finite-state automata with a single initial state and optional ε-moves.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::AutomataError;

pub const PAD: &str = "_";
pub const EPS: &str = "eps";

/// Names of the input symbols; symbol `i` is `symbols[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new(symbols: Vec<String>) -> Self {
        Alphabet { symbols }
    }

    /// Pair alphabet over `names ∪ {pad}` without `(pad, pad)`; `(x, y)` has index `x·(n+1) + y`
    /// with the pad at position `n`.
    pub fn pairs(names: &[String]) -> Self {
        let n = names.len();
        let mut symbols = Vec::with_capacity((n + 1) * (n + 1) - 1);
        for x in 0..=n {
            for y in 0..=n {
                if x == n && y == n {
                    continue;
                }
                let a = if x == n { PAD } else { names[x].as_str() };
                let b = if y == n { PAD } else { names[y].as_str() };
                symbols.push(format!("{a}|{b}"));
            }
        }
        Alphabet { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, a: u32) -> &str {
        &self.symbols[a as usize]
    }

    pub fn index(&self, name: &str) -> Option<u32> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| i as u32)
    }
}

/// Index of the pair symbol `(x, y)`; `None` stands for the pad.
pub fn pair_symbol(n: usize, x: Option<usize>, y: Option<usize>) -> u32 {
    let x = x.unwrap_or(n);
    let y = y.unwrap_or(n);
    debug_assert!(!(x == n && y == n));
    (x * (n + 1) + y) as u32
}

/// Inverse of [`pair_symbol`].
pub fn unpair_symbol(n: usize, a: u32) -> (Option<usize>, Option<usize>) {
    let a = a as usize;
    let (x, y) = (a / (n + 1), a % (n + 1));
    ((x < n).then_some(x), (y < n).then_some(y))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fsa {
    alphabet: Alphabet,
    initial: u32,
    accepting: Vec<bool>,
    /// Per state, `(symbol, target)` sorted and deduplicated.
    edges: Vec<Vec<(u32, u32)>>,
    eps: Vec<Vec<u32>>,
}

impl Fsa {
    /// `states` states, no transitions, none accepting, initial state 0.
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        Fsa {
            alphabet,
            initial: 0,
            accepting: vec![false; states.max(1)],
            edges: vec![Vec::new(); states.max(1)],
            eps: vec![Vec::new(); states.max(1)],
        }
    }

    /// The automaton with the empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        Fsa::new(alphabet, 1)
    }

    /// The automaton accepting only the given words.
    pub fn from_words(alphabet: Alphabet, words: &[Vec<u32>]) -> Self {
        let mut fsa = Fsa::new(alphabet, 1);
        for w in words {
            let mut q = 0;
            for &a in w {
                q = match fsa.edges[q as usize].iter().find(|e| e.0 == a) {
                    Some(&(_, t)) => t,
                    None => {
                        let t = fsa.add_state();
                        fsa.add_edge(q, a, t);
                        t
                    }
                };
            }
            fsa.set_accepting(q, true);
        }
        fsa
    }

    pub fn add_state(&mut self) -> u32 {
        self.accepting.push(false);
        self.edges.push(Vec::new());
        self.eps.push(Vec::new());
        self.accepting.len() as u32 - 1
    }

    pub fn add_edge(&mut self, from: u32, symbol: u32, to: u32) {
        let list = &mut self.edges[from as usize];
        if let Err(pos) = list.binary_search(&(symbol, to)) {
            list.insert(pos, (symbol, to));
        }
    }

    pub fn add_eps(&mut self, from: u32, to: u32) {
        let list = &mut self.eps[from as usize];
        if let Err(pos) = list.binary_search(&to) {
            list.insert(pos, to);
        }
    }

    pub fn set_accepting(&mut self, q: u32, yes: bool) {
        self.accepting[q as usize] = yes;
    }

    pub fn set_initial(&mut self, q: u32) {
        self.initial = q;
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(|e| e.len()).sum::<usize>()
            + self.eps.iter().map(|e| e.len()).sum::<usize>()
    }

    pub fn initial(&self) -> u32 {
        self.initial
    }

    pub fn is_accepting(&self, q: u32) -> bool {
        self.accepting[q as usize]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = u32> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| i as u32)
    }

    pub fn edges(&self, q: u32) -> &[(u32, u32)] {
        &self.edges[q as usize]
    }

    pub fn eps_edges(&self, q: u32) -> &[u32] {
        &self.eps[q as usize]
    }

    pub fn is_deterministic(&self) -> bool {
        self.eps.iter().all(|e| e.is_empty())
            && self
                .edges
                .iter()
                .all(|e| e.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// Every state reachable and co-reachable.
    pub fn is_trim(&self) -> bool {
        let fwd = self.reachable();
        let bwd = self.coreachable();
        fwd.iter().zip(&bwd).all(|(a, b)| *a && *b)
    }

    /// Successor in a deterministic automaton.
    pub fn step(&self, q: u32, a: u32) -> Option<u32> {
        let list = &self.edges[q as usize];
        list.binary_search_by(|e| e.0.cmp(&a))
            .ok()
            .map(|i| list[i].1)
    }

    pub fn eps_closure(&self, set: &mut BTreeSet<u32>) {
        let mut stack: Vec<u32> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q as usize] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    pub fn accepts(&self, word: &[u32]) -> bool {
        let mut cur = BTreeSet::from([self.initial]);
        self.eps_closure(&mut cur);
        for &a in word {
            let mut next = BTreeSet::new();
            for &q in &cur {
                for &(b, t) in &self.edges[q as usize] {
                    if b == a {
                        next.insert(t);
                    }
                }
            }
            self.eps_closure(&mut next);
            if next.is_empty() {
                return false;
            }
            cur = next;
        }
        cur.iter().any(|&q| self.accepting[q as usize])
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial as usize] = true;
        while let Some(q) = stack.pop() {
            let succ = self.edges[q as usize]
                .iter()
                .map(|e| e.1)
                .chain(self.eps[q as usize].iter().copied());
            for t in succ {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for &(_, t) in &self.edges[q] {
                preds[t as usize].push(q as u32);
            }
            for &t in &self.eps[q] {
                preds[t as usize].push(q as u32);
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<u32> = self.accepting_states().collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q as usize] {
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Whether the language is empty.
    pub fn is_empty_language(&self) -> bool {
        !self.coreachable()[self.initial as usize]
    }

    /// Reversed language, as an automaton with ε-moves from a fresh initial state.
    pub fn reverse(&self) -> Fsa {
        let n = self.num_states();
        let mut out = Fsa::new(self.alphabet.clone(), n + 1);
        let start = n as u32;
        out.set_initial(start);
        for q in 0..n {
            for &(a, t) in &self.edges[q] {
                out.add_edge(t, a, q as u32);
            }
            for &t in &self.eps[q] {
                out.add_eps(t, q as u32);
            }
            if self.accepting[q] {
                out.add_eps(start, q as u32);
            }
        }
        out.set_accepting(self.initial, true);
        out
    }

    /// Relabels symbols through `map` into a new alphabet; `None` turns the edge into an ε-move.
    pub fn map_symbols(&self, alphabet: Alphabet, map: impl Fn(u32) -> Option<u32>) -> Fsa {
        let mut out = Fsa::new(alphabet, self.num_states());
        out.initial = self.initial;
        out.accepting = self.accepting.clone();
        for q in 0..self.num_states() {
            for &(a, t) in &self.edges[q] {
                match map(a) {
                    Some(b) => out.add_edge(q as u32, b, t),
                    None => out.add_eps(q as u32, t),
                }
            }
            for &t in &self.eps[q] {
                out.add_eps(q as u32, t);
            }
        }
        out
    }

    /// Same automaton with every state's acceptance replaced by `accept(q)`.
    pub fn with_accepting(&self, accept: impl Fn(u32) -> bool) -> Fsa {
        let mut out = self.clone();
        for q in 0..self.num_states() {
            out.accepting[q] = accept(q as u32);
        }
        out
    }

    /// Line-oriented text form:
    /// `states N alphabet a,b,… initial I`, then `from symbol to` lines, then `accept …`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "states {} alphabet {} initial {}",
            self.num_states(),
            self.alphabet.symbols.join(","),
            self.initial
        );
        for q in 0..self.num_states() {
            for &(a, t) in &self.edges[q] {
                let _ = writeln!(out, "{q} {} {t}", self.alphabet.name(a));
            }
            for &t in &self.eps[q] {
                let _ = writeln!(out, "{q} {EPS} {t}");
            }
        }
        let acc: Vec<String> = self.accepting_states().map(|q| q.to_string()).collect();
        if acc.is_empty() {
            out.push_str("accept\n");
        } else {
            let _ = writeln!(out, "accept {}", acc.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Fsa, AutomataError> {
        let bad = |line: usize, why: &str| AutomataError::Parse(format!("line {line}: {why}"));
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 6 || h[0] != "states" || h[2] != "alphabet" || h[4] != "initial" {
            return Err(bad(1, "expected `states N alphabet SYMBOLS initial I`"));
        }
        let n: usize = h[1].parse().map_err(|_| bad(1, "bad state count"))?;
        if n == 0 {
            return Err(bad(1, "an automaton needs at least one state"));
        }
        let symbols: Vec<String> = h[3].split(',').map(str::to_string).collect();
        let initial: u32 = h[5].parse().map_err(|_| bad(1, "bad initial state"))?;
        if initial as usize >= n {
            return Err(bad(1, "initial state out of range"));
        }
        let mut fsa = Fsa::new(Alphabet::new(symbols), n);
        fsa.initial = initial;
        let state = |t: &str, line: usize| -> Result<u32, AutomataError> {
            let q: u32 = t.parse().map_err(|_| bad(line, "bad state"))?;
            if q as usize >= n {
                return Err(bad(line, "state out of range"));
            }
            Ok(q)
        };
        let mut saw_accept = false;
        for (i, line) in lines {
            let ln = i + 1;
            if saw_accept {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(bad(ln, "content after accept line"));
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.first() == Some(&"accept") {
                for t in &f[1..] {
                    let q = state(t, ln)?;
                    fsa.accepting[q as usize] = true;
                }
                saw_accept = true;
                continue;
            }
            if f.len() != 3 {
                return Err(bad(ln, "expected `from symbol to`"));
            }
            let (from, to) = (state(f[0], ln)?, state(f[2], ln)?);
            if f[1] == EPS {
                fsa.add_eps(from, to);
            } else {
                let a = fsa
                    .alphabet
                    .index(f[1])
                    .ok_or_else(|| bad(ln, "unknown symbol"))?;
                fsa.add_edge(from, a, to);
            }
        }
        if !saw_accept {
            return Err(AutomataError::Parse("missing accept line".into()));
        }
        Ok(fsa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new(vec!["r".into(), "s".into(), "t".into()])
    }

    #[test]
    fn words_and_reverse() {
        let f = Fsa::from_words(abc(), &[vec![0, 1], vec![2]]);
        assert!(f.accepts(&[0, 1]));
        assert!(!f.accepts(&[1, 0]));
        assert!(f.is_deterministic());
        let r = f.reverse();
        assert!(r.accepts(&[1, 0]) && r.accepts(&[2]) && !r.accepts(&[0, 1]));
        assert!(!r.is_deterministic());
        assert!(Fsa::empty(abc()).is_empty_language());
    }

    #[test]
    fn text_round_trip() {
        let mut f = Fsa::from_words(abc(), &[vec![0, 1], vec![2], vec![]]).reverse();
        f.add_edge(1, 2, 1);
        let text = f.to_text();
        let back = Fsa::from_text(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_text(), text);
        assert!(Fsa::from_text("states 2 alphabet a initial 0\n0 b 1\naccept 1\n").is_err());
        assert!(Fsa::from_text("states 2 alphabet a initial 0\n0 a 1\n").is_err());
    }

    #[test]
    fn pair_symbols() {
        let names: Vec<String> = vec!["r".into(), "s".into(), "t".into()];
        let p = Alphabet::pairs(&names);
        assert_eq!(p.len(), 15);
        for x in [None, Some(0), Some(2)] {
            for y in [Some(1), None] {
                if x.is_none() && y.is_none() {
                    continue;
                }
                let a = pair_symbol(3, x, y);
                assert_eq!(unpair_symbol(3, a), (x, y));
            }
        }
        assert_eq!(p.name(pair_symbol(3, Some(0), None)), "r|_");
        assert_eq!(p.name(pair_symbol(3, None, Some(2))), "_|t");
    }
}
