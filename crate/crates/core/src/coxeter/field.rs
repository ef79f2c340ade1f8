//! Exact arithmetic in the real cyclotomic field `ℚ(2cos(π/N))`.
//!
//! Elements are polynomials in `θ = 2cos(π/N)` of degree below the degree of
//! the minimal polynomial of `θ`. The minimal polynomial is obtained by
//! rewriting the palindromic cyclotomic polynomial `Φ_{2N}(x)` in the variable
//! `x + 1/x`. Signs are decided with a floating point evaluation carrying an
//! error bound, falling back to rational interval arithmetic on a shrinking
//! isolating interval for `θ`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// An element of the field, as coefficients of `1, θ, θ², …` (trailing zeros trimmed).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FieldScalar(Vec<BigRational>);

impl FieldScalar {
    pub fn zero() -> Self {
        FieldScalar(Vec::new())
    }

    pub fn from_int(v: i64) -> Self {
        let mut s = FieldScalar(vec![BigRational::from_integer(BigInt::from(v))]);
        s.trim();
        s
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }
}

#[derive(Debug, Clone)]
pub struct RealCyclotomicField {
    conductor: u32,
    /// Monic minimal polynomial of θ, low degree first.
    minpoly: Vec<BigInt>,
    theta: f64,
    bracket: (BigRational, BigRational),
}

impl RealCyclotomicField {
    /// The field generated by `2cos(π/conductor)`.
    pub fn new(conductor: u32) -> Self {
        let conductor = conductor.max(2);
        let phi = cyclotomic(2 * conductor as u64);
        let minpoly = symmetrize(&phi);
        let theta = 2.0 * (std::f64::consts::PI / conductor as f64).cos();
        let bracket = isolate(&minpoly, theta);
        RealCyclotomicField {
            conductor,
            minpoly,
            theta,
            bracket,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn theta(&self) -> FieldScalar {
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    /// `2cos(kπ/N)`, via `C_0 = 2`, `C_1 = θ`, `C_{j+1} = θ·C_j − C_{j−1}`.
    pub fn two_cos(&self, k: u32) -> FieldScalar {
        let theta = self.theta();
        let mut prev = FieldScalar::from_int(2);
        if k == 0 {
            return prev;
        }
        let mut cur = theta.clone();
        for _ in 1..k {
            let next = self.sub(&self.mul(&theta, &cur), &prev);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// `2cos(π/m)` for `m` dividing the conductor.
    pub fn two_cos_pi_over(&self, m: u32) -> FieldScalar {
        assert!(
            self.conductor.is_multiple_of(m),
            "m = {m} does not divide the conductor {}",
            self.conductor
        );
        self.two_cos(self.conductor / m)
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> FieldScalar {
        let d = self.degree();
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - d;
            for (i, m) in self.minpoly[..d].iter().enumerate() {
                c[shift + i] -= &top * BigRational::from_integer(m.clone());
            }
        }
        let mut s = FieldScalar(c);
        s.trim();
        s
    }

    pub fn add(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        let n = a.0.len().max(b.0.len());
        let mut c = vec![BigRational::zero(); n];
        for (i, x) in a.0.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in b.0.iter().enumerate() {
            c[i] += x;
        }
        let mut s = FieldScalar(c);
        s.trim();
        s
    }

    pub fn neg(&self, a: &FieldScalar) -> FieldScalar {
        FieldScalar(a.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        if a.is_zero() || b.is_zero() {
            return FieldScalar::zero();
        }
        let mut c = vec![BigRational::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        self.reduce(c)
    }

    pub fn to_f64(&self, a: &FieldScalar) -> f64 {
        let mut v = 0.0;
        for c in a.0.iter().rev() {
            v = v * self.theta + c.to_f64().unwrap_or(f64::NAN);
        }
        v
    }

    /// Exact sign of `a`.
    pub fn sign(&self, a: &FieldScalar) -> Ordering {
        if a.is_zero() {
            return Ordering::Equal;
        }
        let approx = self.to_f64(a);
        let mut magnitude = 0.0;
        let mut power = 1.0;
        for c in &a.0 {
            magnitude += c.to_f64().unwrap_or(f64::INFINITY).abs() * power;
            power *= self.theta.abs();
        }
        if approx.is_finite() && approx.abs() > 1e-9 * magnitude {
            return if approx > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        self.certified_sign(a)
    }

    fn certified_sign(&self, a: &FieldScalar) -> Ordering {
        let (mut lo, mut hi) = self.bracket.clone();
        let two = BigRational::from_integer(BigInt::from(2));
        loop {
            let (vl, vh) = interval_eval(&a.0, &lo, &hi);
            if vl.is_positive() {
                return Ordering::Greater;
            }
            if vh.is_negative() {
                return Ordering::Less;
            }
            // a ≠ 0 in the field, so shrinking the θ interval eventually separates it from 0.
            let mid = (&lo + &hi) / &two;
            let f_mid = eval_exact(&self.minpoly, &mid);
            if f_mid.is_zero() {
                let v = eval_rational(&a.0, &mid);
                return v.cmp(&BigRational::zero());
            }
            let f_lo = eval_exact(&self.minpoly, &lo);
            if f_lo.signum() == f_mid.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    pub fn cmp(&self, a: &FieldScalar, b: &FieldScalar) -> Ordering {
        self.sign(&self.sub(a, b))
    }
}

fn eval_exact(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut v = BigRational::zero();
    for c in p.iter().rev() {
        v = v * x + BigRational::from_integer(c.clone());
    }
    v
}

fn eval_rational(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut v = BigRational::zero();
    for c in p.iter().rev() {
        v = v * x + c;
    }
    v
}

/// Horner evaluation over the interval `[lo, hi]`.
fn interval_eval(
    p: &[BigRational],
    lo: &BigRational,
    hi: &BigRational,
) -> (BigRational, BigRational) {
    let mut vl = BigRational::zero();
    let mut vh = BigRational::zero();
    for c in p.iter().rev() {
        let cands = [&vl * lo, &vl * hi, &vh * lo, &vh * hi];
        let mn = cands.iter().min().unwrap().clone();
        let mx = cands.iter().max().unwrap().clone();
        vl = mn + c;
        vh = mx + c;
    }
    (vl, vh)
}

/// Rational bracket around the root of `minpoly` near `approx`.
fn isolate(minpoly: &[BigInt], approx: f64) -> (BigRational, BigRational) {
    let mut eps = 1e-9;
    loop {
        let lo = BigRational::from_f64(approx - eps).expect("finite");
        let hi = BigRational::from_f64(approx + eps).expect("finite");
        let fl = eval_exact(minpoly, &lo);
        let fh = eval_exact(minpoly, &hi);
        if fl.is_zero() {
            return (lo.clone(), lo);
        }
        if fh.is_zero() {
            return (hi.clone(), hi);
        }
        if fl.signum() != fh.signum() {
            return (lo, hi);
        }
        eps *= 10.0;
        assert!(eps < 1e-3, "could not isolate 2cos(π/N) near {approx}");
    }
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        return vec![];
    }
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        q[i] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// The `n`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

/// Rewrites a palindromic polynomial of degree `2d` as `x^d·f(x + 1/x)` and returns `f`.
fn symmetrize(p: &[BigInt]) -> Vec<BigInt> {
    let deg = p.len() - 1;
    if deg % 2 == 1 {
        // Φ_2(x) = x + 1: θ = −2 is rational.
        return vec![BigInt::from(2), BigInt::one()];
    }
    let d = deg / 2;
    let mut laurent: Vec<BigInt> = p.to_vec(); // index j + d holds x^j
    let mut f = vec![BigInt::zero(); d + 1];
    for j in (0..=d).rev() {
        let a = laurent[j + d].clone();
        if a.is_zero() {
            continue;
        }
        f[j] = a.clone();
        let mut binom = BigInt::one();
        for k in 0..=j {
            let e = j as i64 - 2 * k as i64;
            laurent[(e + d as i64) as usize] -= &a * &binom;
            binom = binom * BigInt::from((j - k) as u64) / BigInt::from((k + 1) as u64);
        }
    }
    f
}
