//! Knots presented by Seifert matrices: Alexander polynomial,
//! Levine-Tristram signature, admissibility and the Casson-Lin-Herald count.
//!
//! Chirality: [`torus_knot`] returns the right-handed knot, whose trefoil has
//! `σ(-1) = -2`. The `mirrored` flag replaces `V` by `-Vᵀ`.

mod hermitian;
mod jumps;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::cyclotomic::eval_laurent_in;
use crate::exact::{int, CyclotomicField, HolonomyParam, LaurentPoly, Rational, UnitRootPoint};

pub use hermitian::hermitian_signature;
pub use jumps::{refine_jump, signature_jumps, SignatureJump};

/// Square integer matrix `V` of even size with `det(V - Vᵀ) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSeifert("matrix is not square".into()));
        }
        if n % 2 != 0 {
            return Err(Error::InvalidSeifert(format!("size {n} is odd")));
        }
        let skew: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(entries[i][j] - entries[j][i])).collect())
            .collect();
        let d = determinant(skew);
        if !d.is_one() {
            return Err(Error::InvalidSeifert(format!("det(V - V^T) = {d}, expected 1")));
        }
        Ok(SeifertMatrix { entries })
    }

    /// The 0×0 matrix of the unknot.
    pub fn empty() -> Self {
        SeifertMatrix { entries: vec![] }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// `-Vᵀ`, the Seifert matrix of the mirror image.
    pub fn mirror(&self) -> SeifertMatrix {
        let n = self.size();
        SeifertMatrix {
            entries: (0..n).map(|i| (0..n).map(|j| -self.entries[j][i]).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertKnot {
    pub name: String,
    pub seifert: SeifertMatrix,
    pub mirrored: bool,
}

impl SeifertKnot {
    pub fn new(name: impl Into<String>, seifert: SeifertMatrix, mirrored: bool) -> Self {
        SeifertKnot {
            name: name.into(),
            seifert,
            mirrored,
        }
    }

    pub fn unknot() -> Self {
        SeifertKnot::new("unknot", SeifertMatrix::empty(), false)
    }

    /// Right-handed trefoil, `V = [[-1, 1], [0, -1]]`.
    pub fn trefoil() -> Self {
        let v = SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        SeifertKnot::new("trefoil", v, false)
    }

    /// The Seifert matrix with the mirror flag applied.
    pub fn matrix(&self) -> SeifertMatrix {
        if self.mirrored {
            self.seifert.mirror()
        } else {
            self.seifert.clone()
        }
    }

    pub fn mirror(&self) -> SeifertKnot {
        SeifertKnot {
            name: self.name.clone(),
            seifert: self.seifert.clone(),
            mirrored: !self.mirrored,
        }
    }
}

/// An integer homology sphere, recorded only through its Casson invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmbientSphere {
    pub name: String,
    pub casson: i64,
}

impl AmbientSphere {
    pub fn s3() -> Self {
        AmbientSphere {
            name: "S3".into(),
            casson: 0,
        }
    }

    pub fn with_casson(casson: i64) -> Self {
        AmbientSphere {
            name: format!("Y(lambda_C={casson})"),
            casson,
        }
    }
}

/// Seifert form of the fibre surface of `x^a + y^b`: `-(A_a ⊗ A_b)` where
/// `A_n` is the `(n-1)×(n-1)` matrix with `1` on the diagonal and `-1` just
/// above it. For `(2, 3)` this is `[[-1, 1], [0, -1]]`.
pub fn torus_knot(a: i64, b: i64) -> Result<SeifertKnot> {
    if a < 2 || b < 2 || a.gcd(&b) != 1 {
        return Err(Error::NotCoprime(a, b));
    }
    let block = |n: i64| -> Vec<Vec<i64>> {
        let k = (n - 1) as usize;
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| match j as i64 - i as i64 {
                        0 => 1,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    };
    let (pa, pb) = (block(a), block(b));
    let (na, nb) = (pa.len(), pb.len());
    let mut v = vec![vec![0i64; na * nb]; na * nb];
    for i in 0..na {
        for j in 0..na {
            for k in 0..nb {
                for l in 0..nb {
                    v[i * nb + k][j * nb + l] = -pa[i][j] * pb[k][l];
                }
            }
        }
    }
    let seifert = SeifertMatrix::new(v)?;
    Ok(SeifertKnot::new(format!("T({a},{b})"), seifert, false))
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Conway-normalized `Δ(t) = det(t^{1/2}V - t^{-1/2}Vᵀ) = t^{-g} det(tV - Vᵀ)`.
pub fn alexander_polynomial(knot: &SeifertKnot) -> LaurentPoly {
    let v = knot.matrix();
    let n = v.size();
    if n == 0 {
        return LaurentPoly::one();
    }
    // det(tV - Vᵀ) has degree ≤ n: sample at t = 0..=n and interpolate.
    let samples: Vec<BigInt> = (0..=n as i64)
        .map(|t| {
            let m = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| BigInt::from(t * v.get(i, j) - v.get(j, i)))
                        .collect()
                })
                .collect();
            determinant(m)
        })
        .collect();
    let coeffs = interpolate_integer_points(&samples);
    LaurentPoly::new(-(v.genus() as i64), coeffs)
}

/// Coefficients (lowest first) of the polynomial taking `values[i]` at
/// `x = i`, via Newton forward differences.
fn interpolate_integer_points(values: &[BigInt]) -> Vec<BigInt> {
    let n = values.len();
    let mut diffs: Vec<Rational> = values.iter().map(|v| Rational::from_integer(v.clone())).collect();
    let mut newton = Vec::with_capacity(n);
    for k in 0..n {
        newton.push(diffs[0].clone() / factorial(k));
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // Σ newton[k] · x(x-1)...(x-k+1)
    let mut poly = vec![Rational::zero(); n];
    let mut basis = vec![Rational::one()];
    for (k, c) in newton.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            poly[i] += c * b;
        }
        // basis *= (x - k)
        let mut next = vec![Rational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * int(k as i64);
        }
        basis = next;
    }
    poly.into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * int(i))
}

/// Exact test of `Δ_K(ω) ≠ 0` at the evaluation point of `h`.
pub fn admissible(knot: &SeifertKnot, h: &HolonomyParam) -> bool {
    alexander_nonzero_at(&alexander_polynomial(knot), h.omega())
}

pub(crate) fn alexander_nonzero_at(delta: &LaurentPoly, w: &UnitRootPoint) -> bool {
    let field = CyclotomicField::new(w.order());
    !eval_laurent_in(&field, delta, w).is_zero()
}

/// Levine-Tristram signature at `ω = exp(-4πiα)`: the signature of the
/// Hermitian form `(1 - ω)V + (1 - ω̄)Vᵀ`.
pub fn levine_tristram_signature(knot: &SeifertKnot, h: &HolonomyParam) -> Result<i64> {
    signature_at_point(knot, h.omega()).map_err(|_| Error::Inadmissible(h.alpha().clone()))
}

/// Signature at an arbitrary root of unity `w ≠ 1`; errors if the form is
/// degenerate there.
pub fn signature_at_point(knot: &SeifertKnot, w: &UnitRootPoint) -> Result<i64> {
    let v = knot.matrix();
    let n = v.size();
    if n == 0 {
        return Ok(0);
    }
    let field = CyclotomicField::new(w.order());
    let delta = alexander_polynomial(knot);
    if eval_laurent_in(&field, &delta, w).is_zero() || w.order() == 1 {
        return Err(Error::Domain(format!(
            "form is degenerate at turn {}",
            w.turn()
        )));
    }
    let omega = field.root_power(w.exponent() as i64);
    let one = field.from_rational(int(1));
    let a = field.sub(&one, &omega);
    let abar = field.conj(&a);
    let mut h = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let x = field.scale(&a, &int(v.get(i, j)));
            let y = field.scale(&abar, &int(v.get(j, i)));
            row.push(field.add(&x, &y));
        }
        h.push(row);
    }
    hermitian_signature(&field, h)
}

/// `λ_CLH = 4λ_C(Y) + σ_K(ω)/2`.
pub fn clh_invariant(y: &AmbientSphere, knot: &SeifertKnot, h: &HolonomyParam) -> Result<i64> {
    let sigma = levine_tristram_signature(knot, h)?;
    debug_assert!(sigma % 2 == 0, "signature must be even at admissible alpha");
    Ok(4 * y.casson + sigma / 2)
}
