//! Univariate polynomials over ℚ and integer Laurent polynomials, with the
//! Sturm-sequence machinery used for real root isolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{int, Rational};

/// Dense polynomial with rational coefficients, lowest degree first.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        QPoly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => QPoly::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Sign of the value at `x` as -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign(&self.eval(x))
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dj;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn xgcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (QPoly::constant(int(1)), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::constant(int(1)));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.leading().cloned() {
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<QPoly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = -seq.last().unwrap().rem(&next);
            seq.push(next);
            next = r;
        }
        seq
    }

    /// Yun's square-free decomposition: pairs `(f_i, i)` with
    /// `self = c · Π f_i^i`, each `f_i` square-free and monic.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = QPoly::gcd(self, &d);
        let mut b = self.div_rem(&a0).0;
        let mut c = d.div_rem(&a0).0;
        let mut dd = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = QPoly::gcd(&b, &dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = dd.div_rem(&a).0;
            dd = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Isolates the real roots of a square-free polynomial in the open
    /// interval `(lo, hi)` into disjoint rational intervals `(a, b)` with
    /// `p(a)·p(b) < 0`, each containing exactly one root.
    pub fn isolate_roots(&self, lo: &Rational, hi: &Rational) -> Vec<(Rational, Rational)> {
        let seq = self.sturm_sequence();
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let n = roots_in_open(self, &seq, &a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 && self.sign_at(&a) * self.sign_at(&b) < 0 {
                out.push((a, b));
                continue;
            }
            // Split at a point that is not itself a root.
            let mut m = (&a + &b) / int(2);
            let mut k = 3;
            while self.sign_at(&m) == 0 {
                m = &a + (&b - &a) / int(k);
                k += 1;
            }
            stack.push((m.clone(), b));
            stack.push((a, m));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }
}

pub fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of sign changes of a Sturm sequence evaluated at `x`,
/// zeros skipped.
pub fn sign_variations_at(seq: &[QPoly], x: &Rational) -> usize {
    count_variations(seq.iter().map(|p| p.sign_at(x)))
}

pub fn count_variations(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Distinct roots of `p` in `(a, b)`, given its Sturm sequence.
fn roots_in_open(p: &QPoly, seq: &[QPoly], a: &Rational, b: &Rational) -> usize {
    // Sturm counts roots in (a, b]; remove b itself when it is a root.
    let n = sign_variations_at(seq, a) - sign_variations_at(seq, b);
    if p.sign_at(b) == 0 {
        n - 1
    } else {
        n
    }
}

/// Distinct roots in `(a, b]` counted by Sturm's theorem.
pub fn sturm_count(seq: &[QPoly], a: &Rational, b: &Rational) -> usize {
    sign_variations_at(seq, a) - sign_variations_at(seq, b)
}

/// `P_k(z)` with `x^k + x^{-k} = P_k(x + x^{-1})`.
pub fn chebyshev_sum(k: usize) -> QPoly {
    let mut prev = QPoly::from_ints(&[2]);
    if k == 0 {
        return prev;
    }
    let mut cur = QPoly::x();
    for _ in 1..k {
        let next = &(&QPoly::x() * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Rewrites a palindromic sum `c_0 + Σ_{k≥1} c_k (x^k + x^{-k})` as a
/// polynomial in `z = x + x^{-1}`. `half[k] = c_k`.
pub fn palindromic_to_z(half: &[Rational]) -> QPoly {
    let mut acc = QPoly::zero();
    for (k, c) in half.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = if k == 0 {
            QPoly::constant(c.clone())
        } else {
            chebyshev_sum(k).scale(c)
        };
        acc = &acc + &term;
    }
    acc
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            write!(f, "{}", c.abs())?;
            match i {
                0 => {}
                1 => write!(f, "*z")?,
                _ => write!(f, "*z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Laurent polynomial `Σ c_k t^k` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    /// `coeffs[i]` is the coefficient of `t^(min_exp + i)`.
    pub fn new(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(min_exp: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::new(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        LaurentPoly::from_ints(0, &[1])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = 0;
        } else {
            self.coeffs.drain(..lead_zeros);
            self.min_exp += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i64) -> BigInt {
        let i = k - self.min_exp;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterator over `(exponent, coefficient)` for nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.terms()
            .map(|(k, c)| Rational::from_integer(c.clone()) * pow_i(t, k))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `Δ(t) = Δ(t^{-1})` coefficientwise.
    pub fn is_symmetric(&self) -> bool {
        self.is_zero() || (self.min_exp == -self.max_exp() && self.coeffs.iter().eq(self.coeffs.iter().rev()))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly::new(self.min_exp + k, self.coeffs.clone())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly::new(self.min_exp, self.coeffs.iter().map(|c| -c).collect())
    }

    /// For a symmetric polynomial, the `f` with `Δ(t) = f(t + t^{-1})`.
    pub fn to_z_poly(&self) -> Option<QPoly> {
        if !self.is_symmetric() {
            return None;
        }
        let g = self.max_exp().max(0);
        let half: Vec<Rational> = (0..=g)
            .map(|k| Rational::from_integer(self.coeff(k)))
            .collect();
        Some(palindromic_to_z(&half))
    }

    /// As an ordinary polynomial after multiplying by `t^{-min_exp}`.
    pub fn to_qpoly_shifted(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }
}

fn pow_i(t: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(t.clone(), k as usize)
    } else {
        num_traits::pow(t.recip(), (-k) as usize)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let k = self.min_exp + i as i64;
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        Ok(())
    }
}
