//! Bruhat order, R-polynomials and Kazhdan–Lusztig polynomials on a ball.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::poly::IntPoly;
use super::KlError;
use crate::coxeter::{ElementBall, Word};

/// R- and P-polynomials for every Bruhat pair `v ≤ w` inside a ball.
#[derive(Debug, Clone)]
pub struct KlTable {
    ball: ElementBall,
    /// `lower[w]` = `{v : v ≤ w}` as a bitset over ball indices.
    lower: Vec<FixedBitSet>,
    /// Sorted members of `lower[w]`.
    lower_list: Vec<Vec<u32>>,
    r: Vec<Vec<IntPoly>>,
    p: Vec<Vec<IntPoly>>,
}

impl KlTable {
    /// Computes everything; `cap` bounds the number of stored pairs.
    pub fn new(ball: &ElementBall, cap: Option<usize>) -> Result<Self, KlError> {
        let lower = lower_ideals(ball);
        let pairs: usize = lower.iter().map(|b| b.count_ones(..)).sum();
        if let Some(cap) = cap {
            if pairs > cap {
                return Err(KlError::ResourceLimit { pairs, cap });
            }
        }
        let lower_list: Vec<Vec<u32>> = lower
            .iter()
            .map(|b| b.ones().map(|i| i as u32).collect())
            .collect();
        let mut table = KlTable {
            ball: ball.clone(),
            lower,
            lower_list,
            r: Vec::new(),
            p: Vec::new(),
        };
        table.fill_r();
        table.fill_p();
        Ok(table)
    }

    fn fill_r(&mut self) {
        let ball = &self.ball;
        let mut r: Vec<Vec<IntPoly>> = vec![vec![IntPoly::one()]];
        for len in 1..=ball.radius() {
            let level: Vec<Vec<IntPoly>> = ball
                .level(len)
                .into_par_iter()
                .map(|w| {
                    let s = *ball.element(w).word.letters().last().unwrap() as usize;
                    let ws = ball.right_mul(w, s).unwrap();
                    let lookup = |v: usize| -> IntPoly {
                        match self.lower_list[ws].binary_search(&(v as u32)) {
                            Ok(k) => r[ws][k].clone(),
                            Err(_) => IntPoly::zero(),
                        }
                    };
                    self.lower_list[w]
                        .iter()
                        .map(|&v| {
                            let v = v as usize;
                            let vs = ball.right_mul(v, s).expect("vs stays inside the ball");
                            if ball.element(v).right.contains(s) {
                                lookup(vs)
                            } else {
                                &lookup(vs).shift(1) + &(&IntPoly::q_minus_one() * &lookup(v))
                            }
                        })
                        .collect()
                })
                .collect();
            r.extend(level);
        }
        self.r = r;
    }

    fn fill_p(&mut self) {
        let p: Vec<Vec<IntPoly>> = (0..self.ball.len())
            .into_par_iter()
            .map(|w| self.p_column(w))
            .collect();
        self.p = p;
    }

    /// `P_{·,w}` by descending induction with identity (iv):
    /// `P_{v,w} = −trunc_{≤(d−1)/2} Σ_{v<x≤w} R_{v,x} P_{x,w}`.
    fn p_column(&self, w: usize) -> Vec<IntPoly> {
        let list = &self.lower_list[w];
        let lw = self.ball.element(w).length();
        let mut col = vec![IntPoly::zero(); list.len()];
        *col.last_mut().unwrap() = IntPoly::one();
        for a in (0..list.len() - 1).rev() {
            let v = list[a] as usize;
            let d = lw - self.ball.element(v).length();
            let mut sum = IntPoly::zero();
            for b in a + 1..list.len() {
                let x = list[b] as usize;
                if !self.lower[x].contains(v) {
                    continue;
                }
                sum.add_assign_ref(&(&self.r_poly(v, x) * &col[b]));
            }
            col[a] = -&sum.truncate((d - 1) / 2);
        }
        col
    }

    pub fn ball(&self) -> &ElementBall {
        &self.ball
    }

    pub fn len(&self) -> usize {
        self.ball.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ball.is_empty()
    }

    /// Number of Bruhat pairs `v ≤ w` stored.
    pub fn pair_count(&self) -> usize {
        self.lower_list.iter().map(|l| l.len()).sum()
    }

    pub fn bruhat_leq(&self, v: usize, w: usize) -> bool {
        self.lower[w].contains(v)
    }

    /// Ball indices of the interval `[e, w]`, sorted.
    pub fn lower_ideal(&self, w: usize) -> &[u32] {
        &self.lower_list[w]
    }

    fn slot(&self, v: usize, w: usize) -> Option<usize> {
        self.lower_list[w].binary_search(&(v as u32)).ok()
    }

    pub fn r_poly(&self, v: usize, w: usize) -> IntPoly {
        self.slot(v, w)
            .map(|k| self.r[w][k].clone())
            .unwrap_or_default()
    }

    pub fn kl_poly(&self, v: usize, w: usize) -> IntPoly {
        self.slot(v, w)
            .map(|k| self.p[w][k].clone())
            .unwrap_or_default()
    }

    /// Coefficient of `q^{(l(w)−l(v)−1)/2}` in `P_{v,w}`; 0 unless `v < w` with odd length difference.
    pub fn mu(&self, v: usize, w: usize) -> i64 {
        let (lv, lw) = (self.ball.element(v).length(), self.ball.element(w).length());
        if lv >= lw || (lw - lv) % 2 == 0 {
            return 0;
        }
        match self.slot(v, w) {
            Some(k) => self.p[w][k].coeff((lw - lv - 1) / 2),
            None => 0,
        }
    }

    /// Re-checks identity (iv) in full, including the top-degree half, for the pair.
    pub fn check_identity(&self, v: usize, w: usize) -> bool {
        if !self.bruhat_leq(v, w) {
            return self.kl_poly(v, w).is_zero() && self.r_poly(v, w).is_zero();
        }
        let d = self.ball.element(w).length() - self.ball.element(v).length();
        let lhs = self.kl_poly(v, w).bar_shift(d);
        let mut rhs = IntPoly::zero();
        for &x in &self.lower_list[w] {
            let x = x as usize;
            if self.lower[x].contains(v) {
                rhs.add_assign_ref(&(&self.r_poly(v, x) * &self.kl_poly(x, w)));
            }
        }
        lhs == rhs
    }

    /// `deg R_{v,w} = l(w) − l(v)`, `R_{v,w}(0) = (−1)^{l(w)−l(v)}` and the KL degree bound.
    pub fn check_degrees(&self, v: usize, w: usize) -> bool {
        if !self.bruhat_leq(v, w) {
            return true;
        }
        let d = self.ball.element(w).length() - self.ball.element(v).length();
        let r = self.r_poly(v, w);
        let p = self.kl_poly(v, w);
        let sign = if d.is_multiple_of(2) { 1 } else { -1 };
        let p_ok = if d == 0 {
            p == IntPoly::one()
        } else {
            p.coeff(0) == 1 && p.degree().is_some_and(|deg| 2 * deg < d)
        };
        r.degree() == Some(d) && r.coeff(0) == sign && p_ok
    }

    /// Line-delimited `v <tab> w <tab> R <tab> P <tab> mu` for every pair `v ≤ w`.
    pub fn to_tsv(&self) -> String {
        let g = self.ball.group();
        let mut out = String::new();
        for w in 0..self.len() {
            let ww = g.format(&self.ball.element(w).word);
            for (k, &v) in self.lower_list[w].iter().enumerate() {
                let v = v as usize;
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    g.format(&self.ball.element(v).word),
                    ww,
                    self.r[w][k].to_csv(),
                    self.p[w][k].to_csv(),
                    self.mu(v, w)
                );
            }
        }
        out
    }

    /// Loads cached records; the pair set must match the Bruhat order of the ball exactly.
    pub fn from_tsv(ball: &ElementBall, text: &str) -> Result<Self, KlError> {
        let lower = lower_ideals(ball);
        let lower_list: Vec<Vec<u32>> = lower
            .iter()
            .map(|b| b.ones().map(|i| i as u32).collect())
            .collect();
        let mut r: Vec<Vec<Option<IntPoly>>> =
            lower_list.iter().map(|l| vec![None; l.len()]).collect();
        let mut p = r.clone();
        let g = ball.group();
        for (lineno, line) in text.lines().enumerate() {
            let bad = |why: &str| KlError::BadRecord(format!("line {}: {why}", lineno + 1));
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 5 {
                return Err(bad("expected 5 tab-separated fields"));
            }
            let find = |t: &str| -> Result<usize, KlError> {
                let word = Word::parse(g.presentation(), t).map_err(|e| bad(&e.to_string()))?;
                ball.index_of(&word).ok_or_else(|| bad("word not in ball"))
            };
            let (v, w) = (find(f[0])?, find(f[1])?);
            let k = lower_list[w]
                .binary_search(&(v as u32))
                .map_err(|_| bad("pair is not comparable"))?;
            let rp = IntPoly::from_csv(f[2]).map_err(|_| bad("bad R coefficients"))?;
            let pp = IntPoly::from_csv(f[3]).map_err(|_| bad("bad P coefficients"))?;
            r[w][k] = Some(rp);
            p[w][k] = Some(pp);
        }
        let unwrap = |t: Vec<Vec<Option<IntPoly>>>| -> Result<Vec<Vec<IntPoly>>, KlError> {
            t.into_iter()
                .map(|col| col.into_iter().collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| KlError::BadRecord("missing pairs".into()))
        };
        let table = KlTable {
            ball: ball.clone(),
            lower,
            lower_list,
            r: unwrap(r)?,
            p: unwrap(p)?,
        };
        Ok(table)
    }
}

/// `[e,w] = [e,ws] ∪ [e,ws]·s` for `s` the last letter of `w`.
fn lower_ideals(ball: &ElementBall) -> Vec<FixedBitSet> {
    let n = ball.len();
    let mut lower: Vec<FixedBitSet> = Vec::with_capacity(n);
    for w in 0..n {
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(w);
        if let Some(&s) = ball.element(w).word.letters().last() {
            let ws = ball.right_mul(w, s as usize).unwrap();
            for x in lower[ws].ones() {
                set.insert(x);
                set.insert(
                    ball.right_mul(x, s as usize)
                        .expect("xs stays inside the ball"),
                );
            }
        }
        lower.push(set);
    }
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterGroup, CoxeterPresentation};

    fn table(angles: &[u32], radius: usize) -> KlTable {
        let g = CoxeterGroup::new(CoxeterPresentation::from_angles("g", angles).unwrap());
        let ball = ElementBall::new(&g, radius, None).unwrap();
        KlTable::new(&ball, None).unwrap()
    }

    fn idx(t: &KlTable, s: &str) -> usize {
        let g = t.ball().group();
        t.ball().index_of(&g.element(s).unwrap().word).unwrap()
    }

    #[test]
    fn small_values() {
        let t = table(&[3, 7, 2], 6);
        let e = 0;
        let s = idx(&t, "s");
        assert_eq!(t.r_poly(e, s), IntPoly::q_minus_one());
        assert_eq!(t.kl_poly(e, s), IntPoly::one());
        assert!(t.bruhat_leq(idx(&t, "r"), idx(&t, "rsr")));
        assert!(!t.bruhat_leq(idx(&t, "st"), idx(&t, "rt")));
        assert_eq!(t.mu(e, s), 1);
        assert_eq!(t.mu(s, e), 0);
        assert_eq!(t.mu(e, idx(&t, "rs")), 0);
    }

    #[test]
    fn identities_hold() {
        let t = table(&[3, 7, 2], 7);
        for w in 0..t.len() {
            for v in 0..t.len() {
                assert!(t.check_identity(v, w));
                assert!(t.check_degrees(v, w));
            }
        }
    }

    #[test]
    fn tsv_round_trip() {
        let t = table(&[2, 2, 2, 4], 4);
        let text = t.to_tsv();
        let back = KlTable::from_tsv(t.ball(), &text).unwrap();
        assert_eq!(back.to_tsv(), text);
        let short: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        assert!(KlTable::from_tsv(t.ball(), &short).is_err());
    }
}
