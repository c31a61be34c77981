//! Elements of the Novikov field: formal sums `Σ a_r T^r` with rational
//! exponents, finitely many terms above any bound, and a truncation floor.
//!
//! A floor `f` means every exponent `≤ f` is unknown; the element stands
//! for its stored terms plus `O(T^f)`. Exact elements have no floor.
//! Energies are measured in units of `64π²`.

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, Rational};

pub use parse::{eval_expression, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NovikovElement {
    terms: BTreeMap<Rational, Rational>,
    floor: Option<Rational>,
}

impl NovikovElement {
    pub fn zero() -> Self {
        NovikovElement {
            terms: BTreeMap::new(),
            floor: None,
        }
    }

    pub fn one() -> Self {
        Self::monomial(int(1), int(0))
    }

    /// `c·T^e`.
    pub fn monomial(c: Rational, e: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        NovikovElement { terms, floor: None }
    }

    /// `O(T^f)`: nothing known above `f`.
    pub fn unknown_below(f: Rational) -> Self {
        NovikovElement {
            terms: BTreeMap::new(),
            floor: Some(f),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, int(0))
    }

    /// Builds an element from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed and terms at or below the floor dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>, floor: Option<Rational>) -> Self {
        let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        let mut x = NovikovElement { terms: map, floor };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if let Some(f) = &self.floor {
            self.terms = self.terms.split_off(f);
            self.terms.remove(f);
        }
    }

    /// Terms in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Rational) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn floor(&self) -> Option<&Rational> {
        self.floor.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// Exactly zero: no terms and no floor.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.floor.is_none()
    }

    /// No term is known to be nonzero (either exact zero or pure `O(T^f)`).
    pub fn has_no_known_terms(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal-exponent term `(exponent, coefficient)`.
    pub fn leading(&self) -> Result<(Rational, Rational)> {
        match self.terms.iter().next_back() {
            Some((e, c)) => Ok((e.clone(), c.clone())),
            None => match &self.floor {
                None => Err(Error::ZeroElement),
                Some(f) => Err(Error::FloorExhausted(format!("no term known above T^({f})"))),
            },
        }
    }

    /// Leading exponent, or the floor for a pure `O(T^f)`; `None` for exact 0.
    fn top(&self) -> Option<Rational> {
        self.terms
            .keys()
            .next_back()
            .cloned()
            .or_else(|| self.floor.clone())
    }

    /// Raises the floor to `f` if that is higher, dropping terms at or below.
    pub fn truncate(&self, f: &Rational) -> Self {
        let floor = match &self.floor {
            Some(g) if g >= f => g.clone(),
            _ => f.clone(),
        };
        let mut x = NovikovElement {
            terms: self.terms.clone(),
            floor: Some(floor),
        };
        x.normalize();
        x
    }

    /// Same element with the floor removed (asserting the tail is zero).
    pub fn assume_exact(&self) -> Self {
        NovikovElement {
            terms: self.terms.clone(),
            floor: None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let floor = max_floor(self.floor.as_ref(), other.floor.as_ref());
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert_with(Rational::zero) += c;
        }
        let mut x = NovikovElement { terms, floor };
        x.normalize();
        x
    }

    pub fn neg(&self) -> Self {
        NovikovElement {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            floor: self.floor.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return NovikovElement {
                terms: BTreeMap::new(),
                floor: self.floor.clone(),
            };
        }
        NovikovElement {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
            floor: self.floor.clone(),
        }
    }

    /// Multiplication by `T^s`.
    pub fn shift(&self, s: &Rational) -> Self {
        NovikovElement {
            terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
            floor: self.floor.as_ref().map(|f| f + s),
        }
    }

    /// Product. The unknown tail of `x` contributes only at exponents
    /// `≤ floor(x) + top(y)`, and symmetrically, so the floor is the larger
    /// of those two bounds.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let a = self.floor.as_ref().zip(other.top()).map(|(f, t)| f + t);
        let b = other.floor.as_ref().zip(self.top()).map(|(f, t)| f + t);
        let floor = max_floor(a.as_ref(), b.as_ref());
        let mut terms: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if floor.as_ref().is_some_and(|f| &e <= f) {
                    continue;
                }
                *terms.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        let mut x = NovikovElement { terms, floor };
        x.normalize();
        x
    }

    /// Multiplicative inverse. Writing `x = cT^e(1 + u)` with `u` starting
    /// at `T^{-g}`, the geometric series is summed through `u^depth`, so the
    /// result is known down to `T^{-e-(depth+1)g}` (or less if `x` itself is
    /// truncated).
    pub fn invert(&self, depth: u32) -> Result<Self> {
        let (e, c) = self.leading()?;
        let cinv = Rational::one() / &c;
        // u = x/(cT^e) - 1, in normalized coordinates.
        let u = self.shift(&-&e).scale(&cinv).sub(&Self::one());
        if u.is_zero() {
            return Ok(Self::monomial(cinv, -e));
        }
        let mut bounds: Vec<Rational> = Vec::new();
        if let Some((g_top, _)) = u.terms.iter().next_back() {
            // g_top = -gap
            bounds.push(g_top * int(depth as i64 + 1));
        }
        if let Some(f) = &u.floor {
            bounds.push(f.clone());
        }
        let floor = bounds.into_iter().max().expect("u is nonzero");
        let minus_u = u.neg();
        let mut sum = Self::one();
        let mut power = Self::one();
        for _ in 0..depth {
            power = power.mul(&minus_u).truncate(&floor);
            if power.has_no_known_terms() {
                break;
            }
            sum = sum.add(&power);
        }
        let sum = sum.truncate(&floor);
        Ok(sum.shift(&-e).scale(&cinv))
    }

    /// `self / other`: exact when both are exact and the division
    /// terminates, otherwise `self · other⁻¹` at the given depth.
    pub fn div(&self, other: &Self, depth: u32) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::ZeroElement);
        }
        if let Some(q) = self.div_exact(other) {
            return Ok(q);
        }
        Ok(self.mul(&other.invert(depth)?))
    }

    /// Exact quotient of exact elements, if `other` divides `self` with a
    /// finite quotient.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if !self.is_exact() || !other.is_exact() || other.terms.is_empty() {
            return None;
        }
        if self.terms.is_empty() {
            return Some(Self::zero());
        }
        let (ly, cy) = other.leading().ok()?;
        let min_x = self.terms.keys().next()?.clone();
        let min_y = other.terms.keys().next()?.clone();
        let stop = min_x - min_y;
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Ok((lr, cr)) = rem.leading() {
            let e = &lr - &ly;
            if e < stop {
                return None;
            }
            let t = Self::monomial(&cr / &cy, e);
            rem = rem.sub(&t.mul(other));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Unit-normal form of a nonzero exact element: lowest exponent moved
    /// to 0 and leading coefficient 1. Monomials are units, so this keeps
    /// the element's associate class.
    fn unit_normal(&self) -> Self {
        let (lo, (_, lead)) = match (self.terms.keys().next(), self.terms.iter().next_back()) {
            (Some(lo), Some(top)) => (lo.clone(), top),
            _ => return self.clone(),
        };
        let inv = lead.recip();
        NovikovElement {
            terms: self.terms.iter().map(|(e, c)| (e - &lo, c * &inv)).collect(),
            floor: None,
        }
    }

    /// Greatest common divisor of two exact elements, in unit-normal form.
    /// Both are read as polynomials in `T^{1/D}` after removing the lowest
    /// power, where the ring is Euclidean. `None` if either is truncated;
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Option<Self> {
        if !self.is_exact() || !other.is_exact() {
            return None;
        }
        let mut a = self.unit_normal();
        let mut b = other.unit_normal();
        while !b.terms.is_empty() {
            let (lb, _) = b.leading().ok()?;
            // b is monic with lowest exponent 0
            while let Some((la, ca)) = a.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
                if la < lb {
                    break;
                }
                a = a.sub(&b.shift(&(la - &lb)).scale(&ca));
            }
            let r = a.unit_normal();
            a = b;
            b = r;
        }
        Some(a)
    }

    /// Integer power; negative exponents go through [`invert`](Self::invert).
    pub fn pow(&self, n: i64, depth: u32) -> Result<Self> {
        let base = if n < 0 { self.invert(depth)? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Equality of everything known: terms above the larger floor agree.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let d = self.sub(other);
        d.terms.is_empty()
    }
}

fn max_floor(a: Option<&Rational>, b: Option<&Rational>) -> Option<Rational> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (Some(x), Some(y)) => Some(x.max(y).clone()),
    }
}

impl fmt::Display for NovikovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if first {
                write!(f, "{c}*T^({e})")?;
            } else if c.is_negative() {
                write!(f, " - {}*T^({e})", c.abs())?;
            } else {
                write!(f, " + {c}*T^({e})")?;
            }
            first = false;
        }
        match (&self.floor, first) {
            (Some(fl), true) => write!(f, "O(T^({fl}))"),
            (Some(fl), false) => write!(f, " + O(T^({fl}))"),
            (None, true) => write!(f, "0"),
            (None, false) => Ok(()),
        }
    }
}

impl std::str::FromStr for NovikovElement {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        eval_expression(s, 10)
    }
}

/// Homotopy class of a loop of gauge transformations: instanton number
/// `k` and monopole number `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LoopClass {
    pub k: i64,
    pub l: i64,
}

impl LoopClass {
    pub fn new(k: i64, l: i64) -> Self {
        LoopClass { k, l }
    }
}

/// `k + 2αl`.
pub fn loop_energy(z: LoopClass, alpha: &Rational) -> Rational {
    int(z.k) + alpha * int(2 * z.l)
}

/// `8k + 4l`.
pub fn loop_grading(z: LoopClass) -> i64 {
    8 * z.k + 4 * z.l
}

/// `1 - 4α`, the generator of the energies of grading-zero loops.
pub fn minimal_period_generator(alpha: &Rational) -> Rational {
    int(1) - alpha * int(4)
}
