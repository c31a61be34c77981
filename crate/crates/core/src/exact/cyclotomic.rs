//! Exact arithmetic in the cyclotomic field `ℚ(ζ_m)`, `ζ_m = exp(2πi/m)`.
//!
//! Elements are polynomials in `ζ_m` of degree `< φ(m)`, reduced modulo the
//! cyclotomic polynomial `Φ_m`, so zero has a unique representation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{chebyshev_sum, palindromic_to_z, sign, sturm_count, QPoly};
use super::{int, LaurentPoly, Rational, UnitRootPoint};

/// The `m`-th cyclotomic polynomial with integer coefficients, lowest
/// degree first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut p = to_qpoly(&num);
    for d in 1..m {
        if m % d == 0 {
            let phi_d = to_qpoly(&cyclotomic_polynomial(d));
            p = p.div_rem(&phi_d).0;
        }
    }
    p.coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

fn to_qpoly(c: &[BigInt]) -> QPoly {
    QPoly::new(c.iter().map(|x| Rational::from_integer(x.clone())).collect())
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

/// An element of `ℚ(ζ_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicValue {
    order: u64,
    coeffs: Vec<Rational>,
}

impl CyclotomicValue {
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients of `1, ζ, ζ², …, ζ^{φ(m)-1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Complex embedding at the principal root `exp(2πi/m)`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / m;
                Complex64::from_polar(1.0, theta) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }
}

/// The field `ℚ(ζ_m)` together with the data needed for reduction and for
/// deciding signs of real elements.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    order: u64,
    modulus: Vec<Rational>,
    degree: usize,
    /// Minimal polynomial of `c = ζ + ζ^{-1} = 2cos(2π/m)`.
    real_minpoly: QPoly,
    real_minpoly_sturm: Vec<QPoly>,
    /// `(lo, hi)` with `c` the unique root of `real_minpoly` in `(lo, hi]`.
    real_generator: (Rational, Rational),
}

impl CyclotomicField {
    pub fn new(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let modulus: Vec<Rational> = cyclotomic_polynomial(order)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let degree = modulus.len() - 1;
        let real_minpoly = if degree >= 2 {
            // Φ_m is palindromic of even degree 2d for m ≥ 3.
            let d = degree / 2;
            palindromic_to_z(&modulus[d..])
        } else {
            // m = 1, 2: ζ = ±1 and c = ±2.
            let c = if order == 1 { int(2) } else { int(-2) };
            QPoly::new(vec![-c, int(1)])
        };
        let seq = real_minpoly.sturm_sequence();
        let approx = 2.0 * (2.0 * std::f64::consts::PI / order as f64).cos();
        let real_generator = isolate_near(&real_minpoly, &seq, approx);
        CyclotomicField {
            order,
            modulus,
            degree,
            real_minpoly,
            real_minpoly_sturm: seq,
            real_generator,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `φ(m)`, the degree of the field over `ℚ`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    fn reduce(&self, mut c: Vec<Rational>) -> CyclotomicValue {
        let d = self.degree;
        if c.len() > d {
            for k in (d..c.len()).rev() {
                if c[k].is_zero() {
                    continue;
                }
                let lead = std::mem::take(&mut c[k]);
                for j in 0..d {
                    if !self.modulus[j].is_zero() {
                        c[k - d + j] -= &lead * &self.modulus[j];
                    }
                }
            }
        }
        c.resize(d, Rational::zero());
        CyclotomicValue {
            order: self.order,
            coeffs: c,
        }
    }

    pub fn zero(&self) -> CyclotomicValue {
        CyclotomicValue {
            order: self.order,
            coeffs: vec![Rational::zero(); self.degree],
        }
    }

    pub fn from_rational(&self, r: Rational) -> CyclotomicValue {
        let mut v = self.zero();
        v.coeffs[0] = r;
        v
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn root_power(&self, k: i64) -> CyclotomicValue {
        let e = k.rem_euclid(self.order as i64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        self.reduce(c)
    }

    pub fn add(&self, a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        CyclotomicValue {
            order: self.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        CyclotomicValue {
            order: self.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &CyclotomicValue) -> CyclotomicValue {
        CyclotomicValue {
            order: self.order,
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, a: &CyclotomicValue, r: &Rational) -> CyclotomicValue {
        CyclotomicValue {
            order: self.order,
            coeffs: a.coeffs.iter().map(|x| x * r).collect(),
        }
    }

    pub fn mul(&self, a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![Rational::zero(); 2 * self.degree - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        self.reduce(out)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Φ_m`. Returns `None` for zero.
    pub fn inv(&self, a: &CyclotomicValue) -> Option<CyclotomicValue> {
        if a.is_zero() {
            return None;
        }
        let p = QPoly::new(a.coeffs.clone());
        let phi = QPoly::new(self.modulus.clone());
        let (g, s, _) = QPoly::xgcd(&p, &phi);
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.reduce(s.coeffs().to_vec()))
    }

    /// Complex conjugate: `ζ^k ↦ ζ^{-k}`.
    pub fn conj(&self, a: &CyclotomicValue) -> CyclotomicValue {
        let m = self.order as usize;
        let mut c = vec![Rational::zero(); m.max(1)];
        for (k, x) in a.coeffs.iter().enumerate() {
            if !x.is_zero() {
                c[(m - k % m) % m] += x;
            }
        }
        self.reduce(c)
    }

    pub fn is_real(&self, a: &CyclotomicValue) -> bool {
        &self.conj(a) == a
    }

    /// Value of a rational polynomial at the element `z`.
    pub fn eval_qpoly(&self, p: &QPoly, z: &CyclotomicValue) -> CyclotomicValue {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, z);
            acc.coeffs[0] += c;
        }
        acc
    }

    /// Sign of a nonzero real element under the principal embedding.
    ///
    /// A floating-point evaluation with an explicit error bound answers most
    /// cases; otherwise the element is rewritten as a polynomial `g` in
    /// `c = 2cos(2π/m)` and the isolating interval of `c` is refined until
    /// `g` has no root in it.
    pub fn real_sign(&self, a: &CyclotomicValue) -> Ordering {
        debug_assert!(self.is_real(a), "real_sign on a non-real element");
        if let Some(r) = a.as_rational() {
            return r.cmp(&Rational::zero());
        }
        if let Some(s) = self.real_sign_f64(a) {
            return s;
        }
        self.real_sign_exact(a)
    }

    fn real_sign_f64(&self, a: &CyclotomicValue) -> Option<Ordering> {
        let m = self.order as f64;
        let mut value = 0.0f64;
        let mut mass = 0.0f64;
        for (k, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64()?;
            if !cf.is_finite() || cf == 0.0 {
                return None;
            }
            value += cf * (2.0 * std::f64::consts::PI * k as f64 / m).cos();
            mass += cf.abs();
        }
        let bound = mass * 1e-12;
        if value.abs() > bound {
            Some(value.partial_cmp(&0.0).unwrap())
        } else {
            None
        }
    }

    fn real_sign_exact(&self, a: &CyclotomicValue) -> Ordering {
        // a = (a + ā)/2 = a_0 + Σ_{k≥1} a_k (ζ^k + ζ^{-k})/2
        let mut g = QPoly::constant(a.coeffs[0].clone());
        for (k, c) in a.coeffs.iter().enumerate().skip(1) {
            if !c.is_zero() {
                g = &g + &chebyshev_sum(k).scale(&(c / int(2)));
            }
        }
        let g = g.rem(&self.real_minpoly);
        let g_seq = g.sturm_sequence();
        let (mut lo, mut hi) = self.real_generator.clone();
        loop {
            let glo = g.sign_at(&lo);
            let ghi = g.sign_at(&hi);
            if glo != 0 && ghi != 0 && sturm_count(&g_seq, &lo, &hi) == 0 {
                return glo.cmp(&0);
            }
            let mid = (&lo + &hi) / int(2);
            let pm = self.real_minpoly.sign_at(&mid);
            if pm == 0 {
                return sign(&g.eval(&mid)).cmp(&0);
            }
            if sturm_count(&self.real_minpoly_sturm, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// The real element `w + w̄` for `w = ζ^k`.
    pub fn two_cos(&self, k: i64) -> CyclotomicValue {
        self.add(&self.root_power(k), &self.root_power(-k))
    }
}

/// Finds `(lo, hi]` around `approx` containing exactly one root of `p`.
fn isolate_near(p: &QPoly, seq: &[QPoly], approx: f64) -> (Rational, Rational) {
    if p.degree() == Some(1) {
        let r = -&p.coeffs()[0] / &p.coeffs()[1];
        return (&r - int(1), r + int(1));
    }
    let mut eps = 1e-6;
    loop {
        let lo = rational_from_f64(approx - eps);
        let hi = rational_from_f64(approx + eps);
        if p.sign_at(&lo) != 0 && p.sign_at(&hi) != 0 && sturm_count(seq, &lo, &hi) == 1 {
            return (lo, hi);
        }
        eps /= 16.0;
        assert!(eps > 1e-300, "failed to isolate 2cos(2π/m)");
    }
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// Evaluates an integer Laurent polynomial at `w` exactly, as an element of
/// `ℚ(ζ_m)` with `m = w.order()`.
pub fn eval_laurent_at_root(poly: &LaurentPoly, w: &UnitRootPoint) -> CyclotomicValue {
    let field = CyclotomicField::new(w.order());
    eval_laurent_in(&field, poly, w)
}

/// As [`eval_laurent_at_root`] with a caller-supplied field of order
/// `w.order()`.
pub fn eval_laurent_in(field: &CyclotomicField, poly: &LaurentPoly, w: &UnitRootPoint) -> CyclotomicValue {
    assert_eq!(field.order(), w.order());
    let m = w.order() as i64;
    let n = w.exponent() as i64;
    let mut c = vec![Rational::zero(); m as usize];
    for (k, coeff) in poly.terms() {
        let e = (k * n).rem_euclid(m) as usize;
        c[e] += Rational::from_integer(coeff.clone());
    }
    field.reduce(c)
}
