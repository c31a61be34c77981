//! Brute-force enumeration of irreducible SU(2) representations of torus
//! knot groups `⟨x, y | x^a = y^b⟩` with prescribed meridian trace.
//!
//! An irreducible representation is determined up to conjugacy by the
//! rotation angles `θ₁ = πk₁/a`, `θ₂ = πk₂/b` of `ρ(x)`, `ρ(y)` and the angle
//! `γ ∈ (0, π)` between their axes. For fixed `(k₁, k₂)` this is an arc; the
//! oracle samples `tr ρ(m)` along it and counts crossings of `2cos(2πα)`.

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{rat, HolonomyParam, Rational};
use crate::knotcore::{clh_invariant, torus_knot, AmbientSphere};

const BISECTION_TOL: f64 = 1e-10;
const IDENTITY_TOL: f64 = 1e-12;

type Mat2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusKnotGroup {
    pub a: i64,
    pub b: i64,
    /// `(s, t)` with `s·b + t·a = 1`; the meridian is `x^s y^t`.
    pub meridian_exponents: (i64, i64),
}

impl TorusKnotGroup {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let meridian_exponents = meridian_word(a, b)?;
        Ok(TorusKnotGroup {
            a,
            b,
            meridian_exponents,
        })
    }

    /// Image of `x^p y^q` in the abelianization `ℤ`.
    pub fn abelianize(&self, p: i64, q: i64) -> i64 {
        p * self.b + q * self.a
    }
}

/// One component of the irreducible representation variety.
#[derive(Debug, Clone, PartialEq)]
pub struct RepArc {
    /// `θ₁/π = k₁/a`.
    pub angle_x: Rational,
    /// `θ₂/π = k₂/b`.
    pub angle_y: Rational,
    /// `ρ(x)^a = ρ(y)^b = central_sign · 1`.
    pub central_sign: i64,
    /// `(γ, tr ρ(m))` on the sampling grid.
    pub meridian_trace_samples: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArcTally {
    pub arc: RepArc,
    /// Refined parameters `γ` where `tr ρ(m) = 2cos(2πα)`.
    pub solutions: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    pub count: usize,
    pub arcs: Vec<ArcTally>,
}

/// The Bezout pair `s·b + t·a = 1` with `|s|` minimal, positive `s` on ties.
pub fn meridian_word(a: i64, b: i64) -> Result<(i64, i64)> {
    if a < 2 || b < 2 || a.gcd(&b) != 1 {
        return Err(Error::NotCoprime(a, b));
    }
    let e = b.extended_gcd(&a);
    // e.x·b + e.y·a = 1; shift s by multiples of a.
    let mut s = e.x.rem_euclid(a);
    if 2 * s > a {
        s -= a;
    }
    let t = (1 - s * b) / a;
    debug_assert_eq!(s * b + t * a, 1);
    Ok((s, t))
}

fn mat_mul(p: &Mat2, q: &Mat2) -> Mat2 {
    let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
        }
    }
    r
}

fn identity() -> Mat2 {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    [[one, zero], [zero, one]]
}

fn adjoint(p: &Mat2) -> Mat2 {
    [[p[0][0].conj(), p[1][0].conj()], [p[0][1].conj(), p[1][1].conj()]]
}

fn mat_pow(p: &Mat2, n: i64) -> Mat2 {
    let base = if n < 0 { adjoint(p) } else { *p };
    (0..n.unsigned_abs()).fold(identity(), |acc, _| mat_mul(&acc, &base))
}

/// `cos θ + sin θ (n₁i + n₂j + n₃k)` with `i ↦ diag(i, -i)`,
/// `j ↦ [[0, 1], [-1, 0]]`, `k ↦ [[0, i], [i, 0]]`.
fn su2(theta: f64, n: [f64; 3]) -> Mat2 {
    let (c, s) = (theta.cos(), theta.sin());
    [
        [Complex64::new(c, s * n[0]), Complex64::new(s * n[1], s * n[2])],
        [Complex64::new(-s * n[1], s * n[2]), Complex64::new(c, -s * n[0])],
    ]
}

fn rotate(r: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2];
    }
    out
}

fn max_dev(p: &Mat2, sign: f64) -> f64 {
    let id = identity();
    let mut m = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((p[i][j] - id[i][j] * sign).norm());
        }
    }
    m
}

const IDENTITY_FRAME: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// The arcs `(k₁, k₂)` with `0 < k₁ < a`, `0 < k₂ < b` and
/// `(-1)^{k₁} = (-1)^{k₂}`.
pub fn arcs(g: &TorusKnotGroup) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for k1 in 1..g.a {
        for k2 in 1..g.b {
            if (k1 - k2) % 2 == 0 {
                out.push((k1, k2));
            }
        }
    }
    out
}

pub fn enumerate_meridian_trace_solutions(g: &TorusKnotGroup, h: &HolonomyParam, grid: usize) -> Result<Enumeration> {
    enumerate_in_frame(g, h, grid, &IDENTITY_FRAME)
}

/// As [`enumerate_meridian_trace_solutions`], with both rotation axes
/// transformed by the orthogonal matrix `frame` (a global conjugation).
pub fn enumerate_in_frame(
    g: &TorusKnotGroup,
    h: &HolonomyParam,
    grid: usize,
    frame: &[[f64; 3]; 3],
) -> Result<Enumeration> {
    if grid < 2 {
        return Err(Error::Domain("grid must be at least 2".into()));
    }
    let alpha = num_traits::ToPrimitive::to_f64(h.alpha()).unwrap();
    let target = 2.0 * (2.0 * std::f64::consts::PI * alpha).cos();
    let tallies: Vec<Result<ArcTally>> = arcs(g)
        .par_iter()
        .map(|&(k1, k2)| arc_tally(g, k1, k2, target, grid, frame))
        .collect();
    let arcs = tallies.into_iter().collect::<Result<Vec<_>>>()?;
    let count = arcs.iter().map(|t| t.solutions.len()).sum();
    Ok(Enumeration { count, arcs })
}

fn arc_tally(g: &TorusKnotGroup, k1: i64, k2: i64, target: f64, grid: usize, frame: &[[f64; 3]; 3]) -> Result<ArcTally> {
    let pi = std::f64::consts::PI;
    let th1 = pi * k1 as f64 / g.a as f64;
    let th2 = pi * k2 as f64 / g.b as f64;
    let (s, t) = g.meridian_exponents;
    let sign = if k1 % 2 == 0 { 1.0 } else { -1.0 };
    let rx = su2(th1, rotate(frame, [1.0, 0.0, 0.0]));
    let rx_s = mat_pow(&rx, s);
    if max_dev(&mat_pow(&rx, g.a), sign) > IDENTITY_TOL {
        return Err(Error::Domain(format!("rho(x)^{} is not central on arc ({k1},{k2})", g.a)));
    }
    let eval = |gamma: f64| -> Result<f64> {
        let ry = su2(th2, rotate(frame, [gamma.cos(), gamma.sin(), 0.0]));
        if max_dev(&mat_pow(&ry, g.b), sign) > IDENTITY_TOL {
            return Err(Error::Domain(format!("rho(y)^{} is not central on arc ({k1},{k2})", g.b)));
        }
        let m = mat_mul(&rx_s, &mat_pow(&ry, t));
        Ok((m[0][0] + m[1][1]).re)
    };
    let mut samples = Vec::with_capacity(grid + 1);
    for j in 0..=grid {
        let gamma = pi * j as f64 / grid as f64;
        samples.push((gamma, eval(gamma)?));
    }
    // A sample inside the tolerance band counts as a crossing only when its
    // neighbours lie strictly on opposite sides; anything else is reported.
    let side = |j: usize| -> i8 {
        let f = samples[j].1 - target;
        if f.abs() < BISECTION_TOL {
            0
        } else if f > 0.0 {
            1
        } else {
            -1
        }
    };
    let mut solutions = Vec::new();
    for j in 0..=grid {
        if side(j) == 0 {
            if j == 0 || j == grid || side(j - 1) * side(j + 1) != -1 {
                return Err(Error::Tangency { gamma: samples[j].0 });
            }
            solutions.push(samples[j].0);
        }
    }
    for j in 0..grid {
        let (s0, s1) = (side(j), side(j + 1));
        if s0 == 0 || s1 == 0 || s0 == s1 {
            continue;
        }
        let (mut lo, mut hi) = (samples[j].0, samples[j + 1].0);
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            let fm = eval(mid)? - target;
            if (fm > 0.0) == (s0 > 0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        solutions.push(0.5 * (lo + hi));
    }
    solutions.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(ArcTally {
        arc: RepArc {
            angle_x: rat(k1, g.a),
            angle_y: rat(k2, g.b),
            central_sign: sign as i64,
            meridian_trace_samples: samples,
        },
        solutions,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeraldReport {
    pub oracle_count: usize,
    pub clh: i64,
    pub pass: bool,
}

/// Compares the oracle count with `|λ_CLH(S³, T(a, b), α)|`.
pub fn herald_consistency(a: i64, b: i64, h: &HolonomyParam, grid: usize) -> Result<HeraldReport> {
    let g = TorusKnotGroup::new(a, b)?;
    let knot = torus_knot(a, b)?;
    let clh = clh_invariant(&AmbientSphere::s3(), &knot, h)?;
    let oracle_count = enumerate_meridian_trace_solutions(&g, h, grid)?.count;
    Ok(HeraldReport {
        oracle_count,
        clh,
        pass: oracle_count as i64 == clh.abs(),
    })
}
