//! Random complexes and endomorphisms that satisfy every relation by
//! construction.
//!
//! A complex is assembled in a normal form and then hidden by a random
//! graded change of basis. The normal form has three parts:
//!
//! * a homology part with `∂ = 0`, carrying either `δ₁` or `δ₂` (both would
//!   make `δ₂δ₁ ≠ 0` with nothing to absorb it);
//! * acyclic pairs `∂a = κb` with `κ` a unit;
//! * corrections to `u` that absorb `½δ₂δ₁`: when `δ₂` has a boundary part
//!   `∂w`, `u` gets `½ w·δ₁`; when `δ₁(a) ≠ 0` for a pair `a → b` in gradings
//!   1 → 0, `u(b)` gets `−½κ⁻¹δ₁(a)` times the homology part of `δ₂`.
//!
//! Chain homotopies `∂h + h∂` are added to `u` on top. The endomorphism is
//! `1 + N`, where `N` kills the acyclic part, lands in cycles killed by
//! every `δ₁uⁿ`, and vanishes on the classes of every `uⁿδ₂`. It acts as
//! the identity on the part of homology the reduced groups remove, which
//! is what the compatibility relations ask for.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{int, rat};
use crate::novikov::NovikovElement;

use super::complex::{below, validate, CobordismEndomorphism, GradedComplex};
use super::homology::{cycles, iterates};
use super::matrix::Matrix;

pub fn random_monomial<R: Rng + ?Sized>(rng: &mut R) -> NovikovElement {
    let c = *[-2i64, -1, 1, 1, 2, 3].choose(rng).expect("nonempty");
    let (p, q) = *[(-1i64, 1i64), (-1, 2), (0, 1), (0, 1), (1, 2), (1, 1)]
        .choose(rng)
        .expect("nonempty");
    NovikovElement::monomial(int(c), rat(p, q))
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R, monomial_only: bool) -> NovikovElement {
    if !monomial_only && rng.gen_bool(0.3) {
        NovikovElement::one().sub(&NovikovElement::monomial(int(1), int(-1)))
    } else {
        random_monomial(rng)
    }
}

fn sparse<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, p: f64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(p) {
                m.set(i, j, random_monomial(rng));
            }
        }
    }
    m
}

fn small_int<R: Rng + ?Sized>(rng: &mut R) -> NovikovElement {
    NovikovElement::constant(int(rng.gen_range(-2..=2)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Gen {
    Homology,
    /// Source of acyclic pair `p`.
    Top(usize),
    /// Target of acyclic pair `p`.
    Bottom(usize),
}

struct Pair {
    grading: usize,
    top: usize,
    bottom: usize,
    kappa: NovikovElement,
}

/// Invertible graded basis change as `(g, g⁻¹)`, built from elementary
/// moves and a permutation, so both are exact.
fn basis_change<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Matrix, Matrix) {
    let mut g = Matrix::identity(n);
    let mut gi = Matrix::identity(n);
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=n + 1) {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            let t = random_monomial(rng);
            let mut e = Matrix::identity(n);
            e.set(a, b, t.clone());
            let mut ei = Matrix::identity(n);
            ei.set(a, b, t.neg());
            g = e.mul(&g).expect("square");
            gi = gi.mul(&ei).expect("square");
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = Matrix::identity(n).select_rows(&perm);
    (p.mul(&g).expect("square"), gi.mul(&p.transpose()).expect("square"))
}

/// A valid complex of total rank in `1..=max_total_rank` with a compatible
/// endomorphism.
pub fn random_compatible_pair<R: Rng + ?Sized>(
    rng: &mut R,
    max_total_rank: usize,
) -> Result<(GradedComplex, CobordismEndomorphism)> {
    let target = rng.gen_range(1..=max_total_rank.max(1));
    let mut gens: [Vec<Gen>; 4] = Default::default();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut total = 0;
    while total < target {
        if target - total >= 2 && rng.gen_bool(0.4) {
            let i = rng.gen_range(0..4);
            let j = below(i, 1);
            let p = pairs.len();
            pairs.push(Pair {
                grading: i,
                top: gens[i].len(),
                bottom: gens[j].len(),
                kappa: random_unit(rng, i == 1),
            });
            gens[i].push(Gen::Top(p));
            gens[j].push(Gen::Bottom(p));
            total += 2;
        } else {
            gens[rng.gen_range(0..4)].push(Gen::Homology);
            total += 1;
        }
    }
    let ranks: [usize; 4] = std::array::from_fn(|i| gens[i].len());
    let mut c = GradedComplex::zero(ranks);
    for p in &pairs {
        c.boundary[p.grading].set(p.bottom, p.top, p.kappa.clone());
    }

    let delta2_on_homology = rng.gen_bool(0.5);
    for (k, g) in gens[1].iter().enumerate() {
        let on = match g {
            Gen::Homology => !delta2_on_homology && rng.gen_bool(0.7),
            Gen::Top(_) => rng.gen_bool(0.5),
            Gen::Bottom(_) => false,
        };
        if on {
            c.delta1.set(0, k, random_monomial(rng));
        }
    }
    let mut delta2_h = Matrix::zeros(ranks[2], 1);
    if delta2_on_homology {
        for (k, g) in gens[2].iter().enumerate() {
            if *g == Gen::Homology && rng.gen_bool(0.7) {
                delta2_h.set(k, 0, random_monomial(rng));
            }
        }
    }
    let mut w = Matrix::zeros(ranks[3], 1);
    for (k, g) in gens[3].iter().enumerate() {
        if matches!(g, Gen::Top(_)) && rng.gen_bool(0.5) {
            w.set(k, 0, random_monomial(rng));
        }
    }
    c.delta2 = delta2_h.add(&c.boundary[3].mul(&w)?)?;

    for i in 0..4 {
        let j = below(i, 2);
        for (a, ga) in gens[j].iter().enumerate() {
            for (b, gb) in gens[i].iter().enumerate() {
                if *ga == Gen::Homology && *gb == Gen::Homology && rng.gen_bool(0.4) {
                    c.umap[i].set(a, b, random_monomial(rng));
                }
            }
        }
    }
    let h: [Matrix; 4] = std::array::from_fn(|i| sparse(rng, ranks[below(i, 1)], ranks[i], 0.25));
    for i in 0..4 {
        let j = below(i, 1);
        let homotopy = c.boundary[j].mul(&h[i])?.add(&h[j].mul(&c.boundary[i])?)?;
        c.umap[i] = c.umap[i].add(&homotopy)?;
    }
    let half = rat(1, 2);
    c.umap[1] = c.umap[1].add(&w.mul(&c.delta1)?.scale(&half))?;
    for p in pairs.iter().filter(|p| p.grading == 1) {
        let d = c.delta1.get(0, p.top);
        if d.is_zero() {
            continue;
        }
        let coef = d.div(&p.kappa, 0)?.scale(&-half.clone());
        for r in 0..ranks[2] {
            let v = c.umap[0].get(r, p.bottom).add(&delta2_h.get(r, 0).mul(&coef));
            c.umap[0].set(r, p.bottom, v);
        }
    }
    ensure_valid(&c)?;

    let it = iterates(&c)?;
    let mut m = CobordismEndomorphism::identity(ranks);
    for i in 0..4 {
        let hom: Vec<usize> = (0..ranks[i]).filter(|&k| gens[i][k] == Gen::Homology).collect();
        if hom.is_empty() {
            continue;
        }
        let z = cycles(&c, i)?;
        // Targets: cycles killed by every δ₁uⁿ (odd gradings), all cycles otherwise.
        // Sources: functionals on the homology part vanishing on the uⁿδ₂.
        let (targets, sources) = if i % 2 == 1 {
            let phi = &it.rows[if i == 1 { 0 } else { 1 }];
            let k = z.mul(&phi.mul(&z)?.kernel_basis()?)?;
            (k, Matrix::identity(hom.len()))
        } else {
            let v = &it.cols[if i == 2 { 0 } else { 1 }];
            let p = v.select_rows(&hom);
            (z, p.transpose().kernel_basis()?)
        };
        if targets.cols() == 0 || sources.cols() == 0 {
            continue;
        }
        let mut n = Matrix::zeros(ranks[i], ranks[i]);
        for _ in 0..rng.gen_range(0..=2) {
            let a = Matrix::from_rows((0..targets.cols()).map(|_| vec![small_int(rng)]).collect())?;
            let b = Matrix::from_rows((0..sources.cols()).map(|_| vec![small_int(rng)]).collect())?;
            let col = targets.mul(&a)?;
            let f_h = sources.mul(&b)?;
            let mut f = Matrix::zeros(1, ranks[i]);
            for (t, &k) in hom.iter().enumerate() {
                f.set(0, k, f_h.get(t, 0).clone());
            }
            n = n.add(&col.mul(&f)?)?;
        }
        m.maps[i] = m.maps[i].add(&n)?;
    }

    let changes: Vec<(Matrix, Matrix)> = (0..4).map(|i| basis_change(rng, ranks[i])).collect();
    let g = |i: usize| &changes[i].0;
    let gi = |i: usize| &changes[i].1;
    let mut out = c.clone();
    for i in 0..4 {
        out.boundary[i] = g(below(i, 1)).mul(&c.boundary[i])?.mul(gi(i))?;
        out.umap[i] = g(below(i, 2)).mul(&c.umap[i])?.mul(gi(i))?;
        m.maps[i] = g(i).mul(&m.maps[i])?.mul(gi(i))?;
    }
    out.delta1 = c.delta1.mul(gi(1))?;
    out.delta2 = g(2).mul(&c.delta2)?;
    ensure_valid(&out)?;
    Ok((out, m))
}

fn ensure_valid(c: &GradedComplex) -> Result<()> {
    let r = validate(c);
    if r.passed() {
        Ok(())
    } else {
        Err(Error::Domain(format!("generated complex is invalid:\n{r}")))
    }
}

/// A random `n × n` matrix and a conjugate of it.
pub fn random_similar_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Matrix, Matrix) {
    let a = sparse(rng, n, n, 0.6);
    let (g, gi) = basis_change(rng, n);
    let b = g.mul(&a).expect("square").mul(&gi).expect("square");
    (a, b)
}

/// Adds a random monomial to one diagonal entry, which changes the trace.
pub fn perturb_diagonal<R: Rng + ?Sized>(rng: &mut R, b: &Matrix) -> Matrix {
    let mut out = b.clone();
    let i = rng.gen_range(0..b.rows());
    out.set(i, i, b.get(i, i).add(&random_monomial(rng)));
    out
}
