//! Roots of the Alexander polynomial on the arc `α ∈ (0, 1/2)`, isolated by
//! rational intervals that are certified exactly.
//!
//! With `z = t + t⁻¹` a symmetric `Δ` becomes a polynomial `f(z)` and the
//! evaluation point `ω = exp(-4πiα)` maps to `z(α) = 2cos(4πα)`, which
//! decreases on `(0, 1/4)` and increases on `(1/4, 1/2)`. Root counts on an
//! α-interval are Sturm counts of `f` between two algebraic `z` values,
//! evaluated in the cyclotomic field of each endpoint.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{alexander_nonzero_at, alexander_polynomial, SeifertKnot};
use crate::error::{Error, Result};
use crate::exact::cyclotomic::rational_from_f64;
use crate::exact::poly::count_variations;
use crate::exact::{evaluation_point, int, rat, CyclotomicField, LaurentPoly, QPoly, Rational};

/// An open interval `(lo, hi) ⊂ (0, 1/2)` containing exactly one value of
/// `α` where `Δ_K(exp(-4πiα)) = 0`. `multiplicity` is the order of that
/// root of `Δ_K(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignatureJump {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
    /// The root itself when it is a root of unity, i.e. at a rational `α`.
    pub exact: Option<Rational>,
}

impl SignatureJump {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, alpha: &Rational) -> bool {
        &self.lo < alpha && alpha < &self.hi
    }
}

struct RootData {
    delta: LaurentPoly,
    /// Square-free part of `f(z)` and its Sturm sequence.
    sturm: Vec<QPoly>,
    /// `f(-2) = 0`, i.e. a root at `α = 1/4`.
    root_at_quarter: bool,
}

impl RootData {
    fn new(knot: &SeifertKnot) -> Option<(Self, Vec<(QPoly, usize)>)> {
        let delta = alexander_polynomial(knot);
        let f = delta.to_z_poly().expect("Alexander polynomial is symmetric");
        if f.degree().unwrap_or(0) == 0 {
            return None;
        }
        let parts = f.squarefree_decomposition();
        let mut sq = QPoly::constant(int(1));
        for (p, _) in &parts {
            sq = &sq * p;
        }
        let root_at_quarter = sq.sign_at(&int(-2)) == 0;
        let data = RootData {
            delta,
            sturm: sq.sturm_sequence(),
            root_at_quarter,
        };
        Some((data, parts))
    }

    fn is_root(&self, alpha: &Rational) -> bool {
        !alexander_nonzero_at(&self.delta, &evaluation_point(alpha))
    }

    /// A root at rational `α` is a root of unity of order `N` with
    /// `φ(N) ≤ deg Δ`, and then `α ∈ (1/2N)ℤ`; those candidates are tried.
    fn rational_root_between(&self, lo: &Rational, hi: &Rational) -> Option<Rational> {
        let deg = (self.delta.max_exp() - self.delta.min_exp()) as u64;
        for n in 1..=2 * deg * deg + 2 {
            if totient(n) > deg {
                continue;
            }
            let scale = int(2 * n as i64);
            let first: BigInt = (lo * &scale).floor().to_integer() + 1;
            let last = (hi * &scale).ceil().to_integer() - 1;
            let mut j = first;
            while j <= last {
                let a = Rational::new(j.clone(), scale.to_integer());
                if self.is_root(&a) {
                    return Some(a);
                }
                j += 1;
            }
        }
        None
    }

    /// Sturm sign variations at `z(α)`.
    fn variations(&self, alpha: &Rational) -> usize {
        let w = evaluation_point(alpha);
        let field = CyclotomicField::new(w.order());
        let z = field.two_cos(w.exponent() as i64);
        count_variations(self.sturm.iter().map(|p| {
            match field.real_sign(&field.eval_qpoly(p, &z)) {
                Ordering::Greater => 1,
                Ordering::Less => -1,
                Ordering::Equal => 0,
            }
        }))
    }

    /// Distinct roots with `α ∈ (lo, hi)`, for non-root endpoints
    /// `0 < lo < hi < 1/2`.
    fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        let quarter = rat(1, 4);
        let mut n = 0;
        if lo < &quarter {
            // z decreasing: roots with z ∈ (z(min(hi, 1/4)), z(lo)].
            let b = if hi < &quarter { hi } else { &quarter };
            n += self.variations(b) - self.variations(lo);
        }
        if hi > &quarter {
            let a = if lo > &quarter { lo } else { &quarter };
            n += self.variations(a) - self.variations(hi);
        }
        if self.root_at_quarter && lo < &quarter && &quarter < hi {
            n += 1;
        }
        n
    }
}

/// All jumps of `α ↦ σ_K(exp(-4πiα))` on `(0, 1/2)`, sorted, with
/// pairwise disjoint certified isolating intervals.
pub fn signature_jumps(knot: &SeifertKnot) -> Result<Vec<SignatureJump>> {
    let Some((data, parts)) = RootData::new(knot) else {
        return Ok(vec![]);
    };
    // Floating estimates of every root, with its multiplicity in t.
    let mut est: Vec<(f64, usize, bool)> = Vec::new();
    for (p, mult) in &parts {
        let mut p = p.clone();
        if p.sign_at(&int(-2)) == 0 {
            est.push((0.25, 2 * mult, true));
            p = p.div_rem(&QPoly::from_ints(&[2, 1])).0;
        }
        for (a, b) in p.isolate_roots(&int(-2), &int(2)) {
            let z = refine_root(&p, a, b);
            let a1 = (z / 2.0).clamp(-1.0, 1.0).acos() / (4.0 * std::f64::consts::PI);
            est.push((a1, *mult, false));
            est.push((0.5 - a1, *mult, false));
        }
    }
    est.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());

    let mut out = Vec::with_capacity(est.len());
    for (i, &(a, mult, quarter_root)) in est.iter().enumerate() {
        let mut left = if i > 0 { est[i - 1].0 } else { 0.0 };
        let mut right = if i + 1 < est.len() { est[i + 1].0 } else { 0.5 };
        if !quarter_root {
            if a < 0.25 {
                right = right.min(0.25);
            } else {
                left = left.max(0.25);
            }
        }
        out.push(certify(&data, a, left, right, mult)?);
    }
    Ok(out)
}

fn totient(n: u64) -> u64 {
    let (mut m, mut out, mut p) = (n, n, 2);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn refine_root(p: &QPoly, mut a: Rational, mut b: Rational) -> f64 {
    let sa = p.sign_at(&a);
    for _ in 0..64 {
        let m = (&a + &b) / int(2);
        let sm = p.sign_at(&m);
        if sm == 0 {
            return m.to_f64().unwrap();
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    ((&a + &b) / int(2)).to_f64().unwrap()
}

/// Picks small-denominator endpoints between the root estimate and its
/// neighbours, then certifies them; shrinks towards the estimate on failure.
fn certify(data: &RootData, a: f64, left: f64, right: f64, mult: usize) -> Result<SignatureJump> {
    let mut inner = 0.1;
    for _ in 0..40 {
        let lo = simplest_between(
            &rational_from_f64(a - (a - left) * 0.5),
            &rational_from_f64(a - (a - left) * inner),
        );
        let hi = simplest_between(
            &rational_from_f64(a + (right - a) * inner),
            &rational_from_f64(a + (right - a) * 0.5),
        );
        if !data.is_root(&lo) && !data.is_root(&hi) && data.count(&lo, &hi) == 1 {
            let exact = data.rational_root_between(&lo, &hi);
            return Ok(SignatureJump {
                lo,
                hi,
                multiplicity: mult,
                exact,
            });
        }
        inner *= 0.25;
    }
    Err(Error::Domain(format!("could not certify a root interval near alpha = {a}")))
}

/// Shrinks `jump` by exact bisection until its width is at most `max_width`.
pub fn refine_jump(knot: &SeifertKnot, jump: &SignatureJump, max_width: &Rational) -> Result<SignatureJump> {
    let Some((data, _)) = RootData::new(knot) else {
        return Err(Error::Domain("knot has no signature jumps".into()));
    };
    if data.count(&jump.lo, &jump.hi) != 1 {
        return Err(Error::Domain("interval does not isolate a single root".into()));
    }
    let (mut lo, mut hi) = (jump.lo.clone(), jump.hi.clone());
    while &(&hi - &lo) > max_width {
        let w = &hi - &lo;
        let m = simplest_between(&(&lo + &w / int(3)), &(&hi - &w / int(3)));
        if data.is_root(&m) {
            let q = &w / int(6);
            lo = simplest_between(&(&m - &q), &m);
            hi = simplest_between(&m, &(&m + &q));
        } else if data.count(&lo, &m) == 1 {
            hi = m;
        } else {
            lo = m;
        }
    }
    Ok(SignatureJump {
        lo,
        hi,
        multiplicity: jump.multiplicity,
        exact: jump.exact.clone(),
    })
}

/// The rational with the smallest denominator in the open interval
/// `(lo, hi)`, by continued fractions.
pub(crate) fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi);
    let fl = lo.floor();
    let next = &fl + Rational::one();
    if &next < hi {
        // Smallest-magnitude integer in the interval.
        if lo < &Rational::zero() && hi > &Rational::zero() {
            return Rational::zero();
        }
        if hi <= &Rational::zero() {
            return hi.ceil() - Rational::one();
        }
        return next;
    }
    let a = lo - &fl;
    let b = hi - &fl;
    if a.is_zero() {
        // x ∈ (0, b): the simplest is 1/k with k = ⌊1/b⌋ + 1.
        let k = (Rational::one() / b).floor() + Rational::one();
        return fl + Rational::one() / k;
    }
    fl + Rational::one() / simplest_between(&(Rational::one() / b), &(Rational::one() / a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::validate_holonomy;
    use crate::knotcore::{levine_tristram_signature, torus_knot, SeifertMatrix};

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(1, 20), &rat(1, 8)), rat(1, 9));
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&rat(0, 1), &rat(1, 7)), rat(1, 8));
        assert_eq!(simplest_between(&rat(-3, 2), &rat(5, 2)), rat(0, 1));
        assert_eq!(simplest_between(&rat(7, 2), &rat(9, 2)), int(4));
    }

    #[test]
    fn trefoil_jumps() {
        let k = SeifertKnot::trefoil();
        let j = signature_jumps(&k).unwrap();
        assert_eq!(j.len(), 2);
        assert!(j[0].contains(&rat(1, 12)));
        assert!(j[1].contains(&rat(5, 12)));
        assert!(j.iter().all(|x| x.multiplicity == 1));
        assert_eq!(j[0].exact, Some(rat(1, 12)));
        assert_eq!(j[1].exact, Some(rat(5, 12)));
        let r = refine_jump(&k, &j[0], &rat(1, 1000)).unwrap();
        assert!(r.width() <= rat(1, 1000));
        assert!(r.contains(&rat(1, 12)));
    }

    #[test]
    fn torus_2_5_jumps() {
        let j = signature_jumps(&torus_knot(2, 5).unwrap()).unwrap();
        let expect = [rat(1, 20), rat(3, 20), rat(7, 20), rat(9, 20)];
        assert_eq!(j.len(), 4);
        for (x, e) in j.iter().zip(&expect) {
            assert!(x.contains(e), "{x:?} vs {e}");
        }
        for w in j.windows(2) {
            assert!(w[0].hi <= w[1].lo);
        }
        let exact: Vec<_> = j.iter().map(|x| x.exact.clone().unwrap()).collect();
        assert_eq!(exact, expect);
    }

    #[test]
    fn irrational_jumps_have_no_exact_location() {
        // Δ = 2t − 3 + 2t⁻¹: roots on the circle, not roots of unity.
        let v = SeifertMatrix::new(vec![vec![-1, 0], vec![-1, -2]]).unwrap();
        let j = signature_jumps(&SeifertKnot::new("5_2", v, false)).unwrap();
        assert_eq!(j.len(), 2);
        assert!(j.iter().all(|x| x.exact.is_none()));
    }

    #[test]
    fn signature_constant_between_jumps() {
        let k = torus_knot(3, 4).unwrap();
        let j = signature_jumps(&k).unwrap();
        let mut cuts = vec![int(0)];
        for x in &j {
            cuts.push(x.lo.clone());
            cuts.push(x.hi.clone());
        }
        cuts.push(rat(1, 2));
        for gap in cuts.chunks(2) {
            let (a, b) = (&gap[0], &gap[1]);
            // Three small-denominator points, one per third of the gap.
            let w = (b - a) / int(3);
            let pts: Vec<Rational> = (0..3)
                .map(|i| simplest_between(&(a + &w * int(i)), &(a + &w * int(i + 1))))
                .collect();
            let sigs: Vec<i64> = pts
                .iter()
                .map(|p| levine_tristram_signature(&k, &validate_holonomy(p).unwrap()).unwrap())
                .collect();
            assert!(sigs.windows(2).all(|w| w[0] == w[1]), "{a}..{b}: {sigs:?}");
        }
    }

    #[test]
    fn unknot_has_no_jumps() {
        assert!(signature_jumps(&SeifertKnot::unknot()).unwrap().is_empty());
    }
}
