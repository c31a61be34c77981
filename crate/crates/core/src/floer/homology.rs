//! Homology, reduced groups, the h-invariant and Lefschetz numbers.

use crate::error::{Error, Result};
use crate::exact::int;
use crate::novikov::NovikovElement;

use super::complex::{below, CobordismEndomorphism, GradedComplex};
use super::matrix::{Fraction, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GradedVectorSpace {
    pub dims: [usize; 4],
}

/// `d₀ − d₁ + d₂ − d₃`.
pub fn euler_characteristic(h: &GradedVectorSpace) -> i64 {
    let d = h.dims.map(|x| x as i64);
    d[0] - d[1] + d[2] - d[3]
}

fn ranks_of_boundary(c: &GradedComplex) -> Result<[usize; 4]> {
    let mut r = [0; 4];
    for (i, slot) in r.iter_mut().enumerate() {
        *slot = c.boundary[i].rank()?;
    }
    Ok(r)
}

pub fn homology(c: &GradedComplex) -> Result<GradedVectorSpace> {
    c.check_shapes()?;
    let rk = ranks_of_boundary(c)?;
    Ok(GradedVectorSpace {
        dims: std::array::from_fn(|i| c.ranks[i] - rk[i] - rk[(i + 1) % 4]),
    })
}

/// The iterates `δ₁u^n` (rows) and `u^nδ₂` (columns), split by the grading
/// they live on. Enough iterates are taken for every span to stabilize.
pub(crate) struct Iterates {
    /// Rows on C1 (`n` even) and on C3 (`n` odd).
    pub rows: [Matrix; 2],
    /// Columns in C2 (`n` even) and in C0 (`n` odd).
    pub cols: [Matrix; 2],
}

pub(crate) fn iterates(c: &GradedComplex) -> Result<Iterates> {
    let r = c.ranks;
    let steps = 2 * r.iter().max().copied().unwrap_or(0) + 2;
    let mut rows = [Matrix::zeros(0, r[1]), Matrix::zeros(0, r[3])];
    let mut cols = [Matrix::zeros(r[2], 0), Matrix::zeros(r[0], 0)];
    let mut phi = c.delta1.clone();
    let mut v = c.delta2.clone();
    for n in 0..steps {
        let side = n % 2;
        rows[side] = rows[side].vstack(&phi)?;
        cols[side] = cols[side].hstack(&v)?;
        // φ lives on C_g with g = 1 + 2n; the next one is φ∘u_{g+2}.
        let g = if side == 0 { 1 } else { 3 };
        phi = phi.mul(&c.umap[(g + 2) % 4])?;
        let h = if side == 0 { 2 } else { 0 };
        v = c.umap[h].mul(&v)?;
    }
    Ok(Iterates { rows, cols })
}

/// Subspaces of the chain groups whose quotients give the reduced groups:
/// `top[i] / bottom[i]` for every grading, as column bases.
pub(crate) struct ReducedPieces {
    pub top: [Matrix; 4],
    pub bottom: [Matrix; 4],
}

pub(crate) fn cycles(c: &GradedComplex, i: usize) -> Result<Matrix> {
    c.boundary[i].kernel_basis()
}

pub(crate) fn boundaries(c: &GradedComplex, i: usize) -> Result<Matrix> {
    c.boundary[(i + 1) % 4].column_basis()
}

pub(crate) fn reduced_pieces(c: &GradedComplex) -> Result<ReducedPieces> {
    let it = iterates(c)?;
    let mut top: [Matrix; 4] = std::array::from_fn(|_| Matrix::zeros(0, 0));
    let mut bottom = top.clone();
    // Odd gradings: cycles killed by every δ₁u^n, modulo boundaries.
    for (side, i) in [(0usize, 1usize), (1, 3)] {
        let z = cycles(c, i)?;
        let phi = &it.rows[side];
        let k = z.mul(&phi.mul(&z)?.kernel_basis()?)?;
        let k = k.column_basis()?;
        let b = boundaries(c, i)?;
        let kb = b.mul(&phi.mul(&b)?.kernel_basis()?)?.column_basis()?;
        top[i] = k;
        bottom[i] = kb;
    }
    // Even gradings: cycles modulo boundaries plus the u^nδ₂ classes.
    for (side, i) in [(0usize, 2usize), (1, 0)] {
        let z = cycles(c, i)?;
        let v = &it.cols[side];
        if !c.boundary[i].mul(v)?.vanishes() {
            return Err(Error::Domain(format!(
                "u^n delta2 is not a cycle in grading {i}; the complex is not valid"
            )));
        }
        let s = boundaries(c, i)?.hstack(v)?.column_basis()?;
        top[i] = z;
        bottom[i] = s;
    }
    Ok(ReducedPieces { top, bottom })
}

pub fn reduced_homology(c: &GradedComplex) -> Result<GradedVectorSpace> {
    c.check_shapes()?;
    let p = reduced_pieces(c)?;
    Ok(GradedVectorSpace {
        dims: std::array::from_fn(|i| p.top[i].cols() - p.bottom[i].cols()),
    })
}

/// `χ(HI_red) − χ(HI)`.
pub fn h_invariant(c: &GradedComplex) -> Result<i64> {
    Ok(euler_characteristic(&reduced_homology(c)?) - euler_characteristic(&homology(c)?))
}

/// Trace of `m` restricted to the invariant subspace spanned by the
/// columns of `w` (assumed independent), as an unevaluated fraction.
pub(crate) fn trace_on(m: &Matrix, w: &Matrix, depth: u32) -> Result<Fraction> {
    let k = w.cols();
    if k == 0 {
        return Ok(Fraction::zero());
    }
    let mw = m.mul(w)?;
    if w.hstack(&mw)?.rank()? != k {
        return Err(Error::Domain("map does not preserve the subspace".into()));
    }
    let rows: Vec<usize> = w.transpose().echelon()?.pivots.iter().map(|&(_, c)| c).collect();
    let a = w.select_rows(&rows);
    let b = mw.select_rows(&rows);
    let den = a.determinant(depth)?;
    let mut num = NovikovElement::zero();
    for j in 0..k {
        let mut aj = a.clone();
        for i in 0..k {
            aj.set(i, j, b.get(i, j).clone());
        }
        num = num.add(&aj.determinant(depth)?);
    }
    Ok(Fraction { num, den })
}

fn sign(i: usize) -> bool {
    i % 2 == 0
}

fn check_endomorphism(c: &GradedComplex, m: &CobordismEndomorphism) -> Result<()> {
    c.check_shapes()?;
    m.check_shapes(c.ranks)
}

fn alternating(parts: [Fraction; 4]) -> Fraction {
    parts
        .into_iter()
        .enumerate()
        .fold(Fraction::zero(), |acc, (i, t)| if sign(i) { acc.add(&t) } else { acc.sub(&t) })
}

pub(crate) fn lefschetz_fraction(c: &GradedComplex, m: &CobordismEndomorphism, depth: u32) -> Result<Fraction> {
    let mut parts: [Fraction; 4] = std::array::from_fn(|_| Fraction::zero());
    for (i, part) in parts.iter_mut().enumerate() {
        let z = cycles(c, i)?;
        let b = boundaries(c, i)?;
        *part = trace_on(&m.maps[i], &z, depth)?.sub(&trace_on(&m.maps[i], &b, depth)?);
    }
    Ok(alternating(parts))
}

/// `Σ (−1)^i tr(m_* on HI_i)`. Exact when `C` and `m` are; otherwise
/// divisions are expanded to `depth`.
pub fn lefschetz(c: &GradedComplex, m: &CobordismEndomorphism, depth: u32) -> Result<NovikovElement> {
    check_endomorphism(c, m)?;
    lefschetz_fraction(c, m, depth)?.evaluate(depth)
}

fn reduced_lefschetz_fraction(
    m: &CobordismEndomorphism,
    pieces: &ReducedPieces,
    depth: u32,
) -> Result<Fraction> {
    let mut parts: [Fraction; 4] = std::array::from_fn(|_| Fraction::zero());
    for (i, part) in parts.iter_mut().enumerate() {
        *part = trace_on(&m.maps[i], &pieces.top[i], depth)?
            .sub(&trace_on(&m.maps[i], &pieces.bottom[i], depth)?);
    }
    Ok(alternating(parts))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplittingReport {
    pub chain_map: bool,
    pub delta1_relations: bool,
    pub delta2_relations: bool,
    pub lefschetz: Option<NovikovElement>,
    pub lefschetz_reduced: Option<NovikovElement>,
    pub h: i64,
    pub identity_holds: bool,
    /// Names of the relations that failed.
    pub failures: Vec<String>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for SplittingReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let yn = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(f, "chain map              {}", yn(self.chain_map))?;
        writeln!(f, "delta1 relations       {}", yn(self.delta1_relations))?;
        writeln!(f, "delta2 relations       {}", yn(self.delta2_relations))?;
        if let Some(l) = &self.lefschetz {
            writeln!(f, "Lef(m | HI)            {l}")?;
        }
        if let Some(l) = &self.lefschetz_reduced {
            writeln!(f, "Lef(m | HI_red)        {l}")?;
        }
        writeln!(f, "h                      {}", self.h)?;
        writeln!(f, "Lef_red - Lef = h      {}", yn(self.identity_holds))?;
        write!(f, "{}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Verifies that `m` is a chain map compatible with `δ₁u^n` and `u^nδ₂`,
/// then that `Lef(m | HI_red) − Lef(m | HI) = h`.
pub fn check_splitting_identity(c: &GradedComplex, m: &CobordismEndomorphism, depth: u32) -> Result<SplittingReport> {
    check_endomorphism(c, m)?;
    let mut failures = Vec::new();

    let mut chain_map = true;
    for i in 0..4 {
        let j = below(i, 1);
        let lhs = m.maps[j].mul(&c.boundary[i])?;
        let rhs = c.boundary[i].mul(&m.maps[i])?;
        if !lhs.sub(&rhs)?.vanishes() {
            chain_map = false;
            failures.push(format!("m does not commute with d on C{i}"));
        }
    }

    let it = iterates(c)?;
    let mut delta1_ok = true;
    for (side, i) in [(0usize, 1usize), (1, 3)] {
        let z = cycles(c, i)?;
        let phi_z = it.rows[side].mul(&z)?;
        let base = phi_z.rank()?;
        let moved = it.rows[side].mul(&m.maps[i])?.mul(&z)?.sub(&phi_z)?;
        for n in 0..moved.rows() {
            if phi_z.vstack(&moved.row(n))?.rank()? != base {
                delta1_ok = false;
                failures.push(format!("delta1 u^{} m - delta1 u^{} leaves the span on C{i}", 2 * n + side, 2 * n + side));
                break;
            }
        }
    }
    let mut delta2_ok = true;
    for (side, i) in [(0usize, 2usize), (1, 0)] {
        let span = boundaries(c, i)?.hstack(&it.cols[side])?;
        let base = span.rank()?;
        let moved = m.maps[i].mul(&it.cols[side])?.sub(&it.cols[side])?;
        for n in 0..moved.cols() {
            if span.hstack(&moved.col(n))?.rank()? != base {
                delta2_ok = false;
                failures.push(format!("m u^{} delta2 - u^{} delta2 leaves the span in C{i}", 2 * n + side, 2 * n + side));
                break;
            }
        }
    }

    let h = h_invariant(c)?;
    let (mut lef, mut lef_red, mut identity_holds) = (None, None, false);
    if failures.is_empty() {
        let plain = lefschetz_fraction(c, m, depth)?;
        let pieces = reduced_pieces(c)?;
        let red = reduced_lefschetz_fraction(m, &pieces, depth)?;
        let diff = red
            .sub(&plain)
            .sub(&Fraction::from_element(NovikovElement::constant(int(h))));
        identity_holds = diff.vanishes();
        if !identity_holds {
            failures.push("Lef(m | HI_red) - Lef(m | HI) differs from h".into());
        }
        lef = Some(plain.evaluate(depth)?);
        lef_red = Some(red.evaluate(depth)?);
    }
    Ok(SplittingReport {
        chain_map,
        delta1_relations: delta1_ok,
        delta2_relations: delta2_ok,
        lefschetz: lef,
        lefschetz_reduced: lef_red,
        h,
        identity_holds,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::floer::complex::{dual_complex, flip_complex, validate};

    fn nv(s: &str) -> NovikovElement {
        s.parse().unwrap()
    }

    fn dims(c: &GradedComplex) -> [usize; 4] {
        homology(c).unwrap().dims
    }

    #[test]
    fn homology_examples() {
        assert_eq!(dims(&GradedComplex::zero([2, 0, 1, 0])), [2, 0, 1, 0]);
        let mut c = GradedComplex::zero([0, 1, 1, 0]);
        assert_eq!(dims(&c), [0, 1, 1, 0]);
        c.boundary[2] = Matrix::from_rows(vec![vec![nv("1 - T^(-1)")]]).unwrap();
        assert_eq!(dims(&c), [0, 0, 0, 0]);
        assert_eq!(dims(&dual_complex(&c).unwrap()), [0, 0, 0, 0]);
    }

    #[test]
    fn euler_examples() {
        let e = |d| euler_characteristic(&GradedVectorSpace { dims: d });
        assert_eq!(e([1, 0, 0, 0]), 1);
        assert_eq!(e([1, 2, 3, 0]), 2);
        assert_eq!(e([0, 0, 0, 0]), 0);
    }

    #[test]
    fn reduced_examples() {
        let c = GradedComplex::zero([1, 2, 1, 1]);
        assert_eq!(reduced_homology(&c).unwrap(), homology(&c).unwrap());
        assert_eq!(h_invariant(&c).unwrap(), 0);

        let mut c = GradedComplex::zero([0, 1, 0, 0]);
        c.delta1 = Matrix::from_i64(&[&[1]]);
        assert_eq!(reduced_homology(&c).unwrap().dims, [0, 0, 0, 0]);
        assert_eq!(h_invariant(&c).unwrap(), 1);
        assert_eq!(h_invariant(&flip_complex(&c)).unwrap(), 1);

        let mut c = GradedComplex::zero([0, 0, 1, 0]);
        c.delta2 = Matrix::from_i64(&[&[1]]);
        assert_eq!(reduced_homology(&c).unwrap().dims, [0, 0, 0, 0]);
        assert_eq!(h_invariant(&c).unwrap(), -1);
    }

    #[test]
    fn u_feeds_the_reduced_groups() {
        // δ₁ on x1, u: x3 ↦ x1. Then δ₁u kills nothing in C3 either.
        let mut c = GradedComplex::zero([0, 1, 0, 1]);
        c.delta1 = Matrix::from_i64(&[&[1]]);
        c.umap[3] = Matrix::from_i64(&[&[1]]);
        assert!(validate(&c).passed());
        assert_eq!(reduced_homology(&c).unwrap().dims, [0, 0, 0, 0]);
        assert_eq!(h_invariant(&c).unwrap(), 2);
        let f = flip_complex(&c);
        assert!(validate(&f).passed());
        assert_eq!(h_invariant(&f).unwrap(), 2);
    }

    #[test]
    fn lefschetz_examples() {
        let mut c = GradedComplex::zero([1, 1, 0, 0]);
        c.boundary[1] = Matrix::from_rows(vec![vec![nv("1 - T^(-1)")]]).unwrap();
        let id = CobordismEndomorphism::identity(c.ranks);
        assert_eq!(lefschetz(&c, &id, 5).unwrap(), NovikovElement::zero());
        let c = GradedComplex::zero([1, 2, 1, 0]);
        let id = CobordismEndomorphism::identity(c.ranks);
        assert_eq!(lefschetz(&c, &id, 5).unwrap(), NovikovElement::zero());
        let c = GradedComplex::zero([3, 1, 0, 0]);
        let id = CobordismEndomorphism::identity(c.ranks);
        assert_eq!(lefschetz(&c, &id, 5).unwrap(), NovikovElement::constant(int(2)));
        assert_eq!(
            lefschetz(&c, &CobordismEndomorphism::zero(c.ranks), 5).unwrap(),
            NovikovElement::zero()
        );
        let c = GradedComplex::zero([1, 0, 0, 0]);
        let mut m = CobordismEndomorphism::zero(c.ranks);
        m.maps[0] = Matrix::from_rows(vec![vec![NovikovElement::monomial(int(1), rat(-1, 2))]]).unwrap();
        assert_eq!(lefschetz(&c, &m, 5).unwrap(), nv("T^(-1/2)"));
    }

    #[test]
    fn lefschetz_on_a_nontrivial_quotient() {
        // C1 → C0 with image spanned by (1, 1); m swaps the two generators of C0.
        let mut c = GradedComplex::zero([2, 1, 0, 0]);
        c.boundary[1] = Matrix::from_i64(&[&[1], &[1]]);
        let mut m = CobordismEndomorphism::identity(c.ranks);
        m.maps[0] = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        // H0 is spanned by the class of e0 with m acting by −1 (e1 ≡ −e0).
        assert_eq!(lefschetz(&c, &m, 5).unwrap(), NovikovElement::constant(int(-1)));
    }

    #[test]
    fn splitting_examples() {
        let mut c = GradedComplex::zero([0, 1, 0, 1]);
        c.delta1 = Matrix::from_i64(&[&[1]]);
        c.umap[3] = Matrix::from_i64(&[&[1]]);
        let r = check_splitting_identity(&c, &CobordismEndomorphism::identity(c.ranks), 5).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.h, 2);

        let mut c = GradedComplex::zero([2, 0, 0, 0]);
        let mut m = CobordismEndomorphism::identity(c.ranks);
        m.maps[0] = Matrix::from_i64(&[&[2, 1], &[0, 3]]);
        let r = check_splitting_identity(&c, &m, 5).unwrap();
        assert!(r.passed());
        assert_eq!(r.lefschetz, Some(NovikovElement::constant(int(5))));

        // δ₂ = e0 spans part of C0 via u; m moving e0 off the span fails.
        c = GradedComplex::zero([2, 0, 1, 0]);
        c.delta2 = Matrix::from_i64(&[&[1]]);
        c.umap[2] = Matrix::from_i64(&[&[1], &[0]]);
        assert!(validate(&c).passed());
        let mut m = CobordismEndomorphism::identity(c.ranks);
        m.maps[0] = Matrix::from_i64(&[&[1, 0], &[1, 1]]);
        let r = check_splitting_identity(&c, &m, 5).unwrap();
        assert!(!r.delta2_relations);
        assert!(r.failures[0].contains("delta2"));
        m.maps[0] = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert!(check_splitting_identity(&c, &m, 5).unwrap().passed());
    }
}
