//! The Hecke algebra in the T-basis, the C-basis and the structure constants `h_{x,y,z}`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::poly::HalfLaurent;
use super::table::KlTable;
use super::KlError;
use crate::coxeter::{CoxeterGroup, Element, ElementBall};

/// `Σ c_w T_w`, with no zero coordinates stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<Element, HalfLaurent>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement::default()
    }

    /// `c·T_w`.
    pub fn basis(w: Element, c: HalfLaurent) -> Self {
        let mut h = HeckeElement::zero();
        h.add_term(w, &c);
        h
    }

    pub fn add_term(&mut self, w: Element, c: &HalfLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e = &*e + c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &HalfLaurent) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (w, d) in &self.terms {
            out.add_term(w.clone(), &(d * c));
        }
        out
    }

    pub fn coefficient(&self, w: &Element) -> HalfLaurent {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Element, &HalfLaurent)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Multiplication context; uses the ball's Cayley tables when the elements lie inside it.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra<'a> {
    group: CoxeterGroup,
    ball: Option<&'a ElementBall>,
}

impl<'a> HeckeAlgebra<'a> {
    pub fn new(group: &CoxeterGroup) -> Self {
        HeckeAlgebra {
            group: group.clone(),
            ball: None,
        }
    }

    pub fn with_ball(ball: &'a ElementBall) -> Self {
        HeckeAlgebra {
            group: ball.group().clone(),
            ball: Some(ball),
        }
    }

    fn right_mul(&self, x: &Element, s: usize) -> Element {
        if let Some(ball) = self.ball {
            if let Some(i) = ball.index_of(&x.word) {
                if let Some(j) = ball.right_mul(i, s) {
                    return ball.element(j).clone();
                }
            }
        }
        self.group.right_mul(x, s)
    }

    pub fn t(&self, w: &Element) -> HeckeElement {
        HeckeElement::basis(w.clone(), HalfLaurent::one())
    }

    /// `a·T_s`: `T_x T_s = T_{xs}` if `xs > x`, else `q T_{xs} + (q−1) T_x`.
    pub fn mul_generator(&self, a: &HeckeElement, s: usize) -> HeckeElement {
        let q = HalfLaurent::q();
        let q_minus_one = &q - &HalfLaurent::one();
        let mut out = HeckeElement::zero();
        for (x, c) in a.terms() {
            let xs = self.right_mul(x, s);
            if !x.right.contains(s) {
                out.add_term(xs, c);
            } else {
                out.add_term(xs, &(c * &q));
                out.add_term(x.clone(), &(c * &q_minus_one));
            }
        }
        out
    }

    /// Product in the T-basis, factoring `b` into generators.
    pub fn multiply(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (y, c) in b.terms() {
            let mut part = a.clone();
            for &s in y.word.letters() {
                part = self.mul_generator(&part, s as usize);
            }
            out = out.add(&part.scale(c));
        }
        out
    }

    /// `C_w = Σ_{y≤w} (−1)^{l(w)−l(y)} q^{l(w)/2−l(y)} P_{y,w}(q^{−1}) T_y`.
    pub fn c_basis(&self, w: usize, table: &KlTable) -> HeckeElement {
        let ball = table.ball();
        let lw = ball.element(w).length() as i64;
        let mut out = HeckeElement::zero();
        for &y in table.lower_ideal(w) {
            let y = y as usize;
            let ly = ball.element(y).length() as i64;
            let sign = if (lw - ly) % 2 == 0 { 1 } else { -1 };
            let c = HalfLaurent::from_q_poly(&table.kl_poly(y, w), true, lw - 2 * ly).scale(sign);
            out.add_term(ball.element(y).clone(), &c);
        }
        out
    }

    /// `C_x C_y = Σ_z h_{x,y,z} C_z` by back-substitution from the longest T-support term.
    pub fn h_constants(
        &self,
        x: usize,
        y: usize,
        table: &KlTable,
    ) -> Result<BTreeMap<Element, HalfLaurent>, KlError> {
        let mut rest = self.multiply(&self.c_basis(x, table), &self.c_basis(y, table));
        let mut h = BTreeMap::new();
        while let Some((z, c)) = rest
            .terms
            .iter()
            .next_back()
            .map(|(z, c)| (z.clone(), c.clone()))
        {
            let zi = table.ball().index_of(&z.word).ok_or_else(|| {
                KlError::BallTooSmall(format!("product support reaches length {}", z.length()))
            })?;
            let coef = c.shift(z.length() as i64);
            rest = rest.add(&self.c_basis(zi, table).scale(&-&coef));
            h.insert(z, coef);
        }
        Ok(h)
    }

    /// `Σ_z h_z C_z`.
    pub fn from_c_coordinates(
        &self,
        h: &BTreeMap<Element, HalfLaurent>,
        table: &KlTable,
    ) -> Result<HeckeElement, KlError> {
        let mut out = HeckeElement::zero();
        for (z, c) in h {
            let zi = table.ball().index_of(&z.word).ok_or_else(|| {
                KlError::BallTooSmall(format!("{} is outside the ball", z.length()))
            })?;
            out = out.add(&self.c_basis(zi, table).scale(c));
        }
        Ok(out)
    }

    /// Largest `−(lowest v-exponent of h_{x,y,z})` over `l(x), l(y) ≤ sample_radius`, for every `z`
    /// in the ball (0 where no sampled product involves `z`).
    pub fn a_lower_bounds(
        &self,
        sample_radius: usize,
        table: &KlTable,
    ) -> Result<Vec<i64>, KlError> {
        let ball = table.ball();
        if 2 * sample_radius > ball.radius() {
            return Err(KlError::BallTooSmall(format!(
                "sample radius {sample_radius} needs a ball of radius {}",
                2 * sample_radius
            )));
        }
        let sample: Vec<usize> = (0..ball.len())
            .filter(|&i| ball.element(i).length() <= sample_radius)
            .collect();
        let per_x: Vec<Vec<i64>> = sample
            .par_iter()
            .map(|&x| -> Result<Vec<i64>, KlError> {
                let mut best = vec![0i64; ball.len()];
                for &y in &sample {
                    for (z, c) in self.h_constants(x, y, table)? {
                        let zi = ball.index_of(&z.word).unwrap();
                        best[zi] = best[zi].max(-c.lowest_exponent().unwrap());
                    }
                }
                Ok(best)
            })
            .collect::<Result<_, _>>()?;
        let mut best = vec![0i64; ball.len()];
        for v in per_x {
            for (b, x) in best.iter_mut().zip(v) {
                *b = (*b).max(x);
            }
        }
        Ok(best)
    }

    pub fn a_lower_bound(
        &self,
        z: usize,
        sample_radius: usize,
        table: &KlTable,
    ) -> Result<i64, KlError> {
        Ok(self.a_lower_bounds(sample_radius, table)?[z])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterPresentation;

    fn setup() -> KlTable {
        let g = CoxeterGroup::new(CoxeterPresentation::from_angles("W237", &[3, 7, 2]).unwrap());
        let ball = ElementBall::new(&g, 6, None).unwrap();
        KlTable::new(&ball, None).unwrap()
    }

    #[test]
    fn t_basis_products() {
        let table = setup();
        let g = table.ball().group().clone();
        let h = HeckeAlgebra::new(&g);
        let s = g.generator(1);
        let ts2 = h.multiply(&h.t(&s), &h.t(&s));
        assert_eq!(ts2.coefficient(&g.identity()), HalfLaurent::q());
        assert_eq!(ts2.coefficient(&s), &HalfLaurent::q() - &HalfLaurent::one());
        let rs = h.multiply(&h.t(&g.generator(0)), &h.t(&s));
        assert_eq!(rs, h.t(&g.element("rs").unwrap()));
        assert_eq!(h.multiply(&rs, &h.t(&g.identity())), rs);
    }

    #[test]
    fn c_basis_and_h() {
        let table = setup();
        let ball = table.ball();
        let h = HeckeAlgebra::with_ball(ball);
        let s = ball
            .index_of(&ball.group().element("s").unwrap().word)
            .unwrap();
        let cs = h.c_basis(s, &table);
        assert_eq!(
            cs.coefficient(ball.element(s)),
            HalfLaurent::monomial(1, -1)
        );
        assert_eq!(
            cs.coefficient(ball.element(0)),
            HalfLaurent::monomial(-1, 1)
        );
        assert_eq!(h.c_basis(0, &table), h.t(ball.element(0)));
        let hs = h.h_constants(s, s, &table).unwrap();
        assert_eq!(hs.len(), 1);
        let expected = -&(&HalfLaurent::monomial(1, 1) + &HalfLaurent::monomial(1, -1));
        assert_eq!(hs[ball.element(s)], expected);
        let bounds = h.a_lower_bounds(2, &table).unwrap();
        assert_eq!(bounds[0], 0);
        assert!(bounds[s] >= 1);
        assert!(h.a_lower_bounds(4, &table).is_err());
    }
}
