//! Integer polynomials in `q` and Laurent polynomials in `v = q^{1/2}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly(vec![1])
    }

    /// `q − 1`.
    pub fn q_minus_one() -> Self {
        IntPoly(vec![-1, 1])
    }

    pub fn monomial(c: i64, deg: usize) -> Self {
        let mut v = vec![0; deg + 1];
        v[deg] = c;
        IntPoly::new(v)
    }

    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.0);
        IntPoly(v)
    }

    /// Terms of degree ≤ `deg`.
    pub fn truncate(&self, deg: usize) -> Self {
        IntPoly::new(self.0.iter().take(deg + 1).copied().collect())
    }

    /// `q^d · p(q^{-1})`; requires `d ≥ deg p`.
    pub fn bar_shift(&self, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        for (i, &c) in self.0.iter().enumerate() {
            v[d - i] = c;
        }
        IntPoly::new(v)
    }

    pub fn add_assign_ref(&mut self, other: &IntPoly) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    /// Comma-separated coefficients from degree 0 (empty for zero).
    pub fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_csv(text: &str) -> Result<Self, std::num::ParseIntError> {
        if text.trim().is_empty() {
            return Ok(IntPoly::zero());
        }
        let v = text
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<Vec<i64>, _>>()?;
        Ok(IntPoly::new(v))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![0i64; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.0.iter().enumerate().map(|(i, &c)| (i as i64, c)),
            "q",
        )
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, i64)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        if first {
            if c < 0 {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let a = c.abs();
        match (e, a) {
            (0, _) => write!(f, "{a}")?,
            (1, 1) => write!(f, "{var}")?,
            (1, _) => write!(f, "{a}{var}")?,
            (_, 1) => write!(f, "{var}^{e}")?,
            _ => write!(f, "{a}{var}^{e}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Laurent polynomial in `v = q^{1/2}`: `Σ coeffs[i]·v^{offset+i}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HalfLaurent {
    offset: i64,
    coeffs: Vec<i64>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent::default()
    }

    pub fn one() -> Self {
        HalfLaurent::monomial(1, 0)
    }

    pub fn monomial(c: i64, exp: i64) -> Self {
        HalfLaurent::new(exp, vec![c])
    }

    pub fn new(offset: i64, coeffs: Vec<i64>) -> Self {
        let mut h = HalfLaurent { offset, coeffs };
        h.normalize();
        h
    }

    /// `q` as `v²`.
    pub fn q() -> Self {
        HalfLaurent::monomial(1, 2)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.offset = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
    }

    /// `p(q)` with `q = v²`, multiplied by `v^shift`; `inverse` substitutes `q^{-1}`.
    pub fn from_q_poly(p: &IntPoly, inverse: bool, shift: i64) -> Self {
        let mut out = HalfLaurent::zero();
        for (i, &c) in p.coeffs().iter().enumerate() {
            let e = if inverse { -2 * i as i64 } else { 2 * i as i64 };
            out = &out + &HalfLaurent::monomial(c, e + shift);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent of `v` with a nonzero coefficient.
    pub fn lowest_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    pub fn highest_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        let i = exp - self.offset;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.offset + i as i64, c))
    }

    pub fn scale(&self, c: i64) -> Self {
        HalfLaurent::new(self.offset, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        HalfLaurent {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
        }
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(rhs.offset);
        let hi = self
            .highest_exponent()
            .unwrap()
            .max(rhs.highest_exponent().unwrap());
        let mut v = vec![0; (hi - lo + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            v[(e - lo) as usize] += c;
        }
        HalfLaurent::new(lo, v)
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.scale(-1)
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        self + &(-rhs)
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        if self.is_zero() || rhs.is_zero() {
            return HalfLaurent::zero();
        }
        let mut v = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        HalfLaurent::new(self.offset + rhs.offset, v)
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms(), "v")
    }
}
