//! ℤ/4-graded complexes with the maps `∂`, `δ₁`, `δ₂` and `u`.
//!
//! Index conventions: `boundary[i]: C_i → C_{i-1}` has shape
//! `r_{i-1} × r_i`; `umap[i]: C_i → C_{i-2}` has shape `r_{i-2} × r_i`;
//! `delta1` is a `1 × r_1` row and `delta2` an `r_2 × 1` column.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::rat;
use crate::novikov::NovikovElement;

use super::matrix::Matrix;

pub(crate) fn below(i: usize, k: usize) -> usize {
    (i + 4 - k % 4) % 4
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradedComplex {
    pub ranks: [usize; 4],
    pub boundary: [Matrix; 4],
    pub delta1: Matrix,
    pub delta2: Matrix,
    pub umap: [Matrix; 4],
}

impl GradedComplex {
    /// All maps zero.
    pub fn zero(ranks: [usize; 4]) -> Self {
        GradedComplex {
            ranks,
            boundary: std::array::from_fn(|i| Matrix::zeros(ranks[below(i, 1)], ranks[i])),
            delta1: Matrix::zeros(1, ranks[1]),
            delta2: Matrix::zeros(ranks[2], 1),
            umap: std::array::from_fn(|i| Matrix::zeros(ranks[below(i, 2)], ranks[i])),
        }
    }

    /// Checks shapes only; the algebraic identities are left to
    /// [`validate`].
    pub fn new(
        ranks: [usize; 4],
        boundary: [Matrix; 4],
        delta1: Matrix,
        delta2: Matrix,
        umap: [Matrix; 4],
    ) -> Result<Self> {
        let c = GradedComplex {
            ranks,
            boundary,
            delta1,
            delta2,
            umap,
        };
        c.check_shapes()?;
        Ok(c)
    }

    pub fn check_shapes(&self) -> Result<()> {
        let r = self.ranks;
        let bad = |what: String| Err(Error::DimensionMismatch(what));
        for i in 0..4 {
            if self.boundary[i].shape() != (r[below(i, 1)], r[i]) {
                return bad(format!(
                    "boundary on grading {i} is {:?}, expected {:?}",
                    self.boundary[i].shape(),
                    (r[below(i, 1)], r[i])
                ));
            }
            if self.umap[i].shape() != (r[below(i, 2)], r[i]) {
                return bad(format!(
                    "u on grading {i} is {:?}, expected {:?}",
                    self.umap[i].shape(),
                    (r[below(i, 2)], r[i])
                ));
            }
        }
        if self.delta1.shape() != (1, r[1]) {
            return bad(format!("delta1 is {:?}, expected (1, {})", self.delta1.shape(), r[1]));
        }
        if self.delta2.shape() != (r[2], 1) {
            return bad(format!("delta2 is {:?}, expected ({}, 1)", self.delta2.shape(), r[2]));
        }
        Ok(())
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn is_exact(&self) -> bool {
        self.boundary.iter().chain(&self.umap).all(Matrix::is_exact)
            && self.delta1.is_exact()
            && self.delta2.is_exact()
    }

    /// Relabels generators within each grading: `perm[i][new] = old`.
    pub fn permute(&self, perm: &[Vec<usize>; 4]) -> Self {
        let p = |m: &Matrix, rows: usize, cols: usize| m.select_rows(&perm[rows]).select_cols(&perm[cols]);
        GradedComplex {
            ranks: self.ranks,
            boundary: std::array::from_fn(|i| p(&self.boundary[i], below(i, 1), i)),
            delta1: self.delta1.select_cols(&perm[1]),
            delta2: self.delta2.select_rows(&perm[2]),
            umap: std::array::from_fn(|i| p(&self.umap[i], below(i, 2), i)),
        }
    }
}

/// A degree-preserving map, one square matrix per grading.
#[derive(Debug, Clone, PartialEq)]
pub struct CobordismEndomorphism {
    pub maps: [Matrix; 4],
}

impl CobordismEndomorphism {
    pub fn identity(ranks: [usize; 4]) -> Self {
        CobordismEndomorphism {
            maps: std::array::from_fn(|i| Matrix::identity(ranks[i])),
        }
    }

    pub fn zero(ranks: [usize; 4]) -> Self {
        CobordismEndomorphism {
            maps: std::array::from_fn(|i| Matrix::zeros(ranks[i], ranks[i])),
        }
    }

    pub fn check_shapes(&self, ranks: [usize; 4]) -> Result<()> {
        for i in 0..4 {
            if self.maps[i].shape() != (ranks[i], ranks[i]) {
                return Err(Error::DimensionMismatch(format!(
                    "endomorphism on grading {i} is {:?}, expected {:?}",
                    self.maps[i].shape(),
                    (ranks[i], ranks[i])
                )));
            }
        }
        Ok(())
    }

    pub fn permute(&self, perm: &[Vec<usize>; 4]) -> Self {
        CobordismEndomorphism {
            maps: std::array::from_fn(|i| self.maps[i].select_rows(&perm[i]).select_cols(&perm[i])),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub identity: String,
    pub pass: bool,
    /// First offending entry, `(row, col, value)`.
    pub witness: Option<(usize, usize, NovikovElement)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<IdentityCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{:<34} {}", c.identity, if c.pass { "ok" } else { "FAIL" })?;
            if let Some((i, j, x)) = &c.witness {
                write!(f, "  entry ({i},{j}) = {x}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed() { "valid" } else { "invalid" })
    }
}

fn check(identity: String, m: Result<Matrix>) -> IdentityCheck {
    match m {
        Ok(m) => {
            let witness = m.first_nonzero();
            IdentityCheck {
                identity,
                pass: witness.is_none(),
                witness,
            }
        }
        Err(e) => IdentityCheck {
            identity: format!("{identity} ({e})"),
            pass: false,
            witness: None,
        },
    }
}

/// Checks `∂² = 0`, `δ₁∂ = 0`, `∂δ₂ = 0` and the `u` relation on every
/// grading. Equality is tested above the floors of the entries involved.
pub fn validate(c: &GradedComplex) -> ValidationReport {
    let mut checks = Vec::new();
    if let Err(e) = c.check_shapes() {
        checks.push(IdentityCheck {
            identity: format!("shapes ({e})"),
            pass: false,
            witness: None,
        });
        return ValidationReport { checks };
    }
    let d = &c.boundary;
    let u = &c.umap;
    for i in 0..4 {
        checks.push(check(format!("d∘d on C{i}"), d[below(i, 1)].mul(&d[i])));
    }
    checks.push(check("delta1∘d on C2".into(), c.delta1.mul(&d[2])));
    checks.push(check("d(delta2)".into(), d[2].mul(&c.delta2)));
    for i in 0..4 {
        // ∂_{i-2} u_i − u_{i-1} ∂_i
        let lhs = d[below(i, 2)]
            .mul(&u[i])
            .and_then(|a| u[below(i, 1)].mul(&d[i]).and_then(|b| a.sub(&b)));
        let diff = if i == 1 {
            lhs.and_then(|l| {
                c.delta2
                    .mul(&c.delta1)
                    .and_then(|p| l.sub(&p.scale(&rat(1, 2))))
            })
        } else {
            lhs
        };
        let name = if i == 1 {
            "du - ud = delta2·delta1/2 on C1".to_string()
        } else {
            format!("du - ud = 0 on C{i}")
        };
        checks.push(check(name, diff));
    }
    ValidationReport { checks }
}

/// The complex of the reversed orientation: `C'_j = C_{-j-1}^*`, maps
/// transposed, coefficients `T^e ↦ T^{-e}`. The `u` map picks up a sign so
/// the relation with `δ₂'δ₁' = (δ₂δ₁)^T` still holds.
pub fn dual_complex(c: &GradedComplex) -> Result<GradedComplex> {
    c.check_shapes()?;
    let src = |j: usize| (4 + 4 - 1 - j) % 4;
    let ranks = std::array::from_fn(|j| c.ranks[src(j)]);
    let refl = |m: &Matrix| m.transpose().reflect_exponents();
    let boundary = [0, 1, 2, 3].map(|j| refl(&c.boundary[(4 - j) % 4]));
    let umap = [0, 1, 2, 3].map(|j| refl(&c.umap[(5 - j) % 4]).map(|m| m.neg()));
    let [b0, b1, b2, b3] = boundary;
    let [u0, u1, u2, u3] = umap;
    GradedComplex::new(
        ranks,
        [b0?, b1?, b2?, b3?],
        refl(&c.delta2)?,
        refl(&c.delta1)?,
        [u0?, u1?, u2?, u3?],
    )
}

/// The dual of an endomorphism, acting on [`dual_complex`].
pub fn dual_endomorphism(m: &CobordismEndomorphism) -> Result<CobordismEndomorphism> {
    let maps = [0, 1, 2, 3].map(|j| m.maps[(3 + 4 - j) % 4].transpose().reflect_exponents());
    let [a, b, c, d] = maps;
    Ok(CobordismEndomorphism { maps: [a?, b?, c?, d?] })
}

/// `u ↦ −u` together with `δ₂ ↦ −δ₂`.
pub fn flip_complex(c: &GradedComplex) -> GradedComplex {
    GradedComplex {
        ranks: c.ranks,
        boundary: c.boundary.clone(),
        delta1: c.delta1.clone(),
        delta2: c.delta2.neg(),
        umap: c.umap.clone().map(|m| m.neg()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> NovikovElement {
        NovikovElement::one()
    }

    #[test]
    fn worked_complex_validates() {
        let mut c = GradedComplex::zero([1, 1, 1, 1]);
        c.delta1.set(0, 0, one());
        assert!(validate(&c).passed());
        assert!(validate(&GradedComplex::zero([2, 0, 3, 1])).passed());
    }

    #[test]
    fn failures_carry_witnesses() {
        let mut c = GradedComplex::zero([0, 1, 1, 0]);
        c.boundary[2] = Matrix::from_i64(&[&[1]]);
        c.delta1 = Matrix::from_i64(&[&[1]]);
        let r = validate(&c);
        assert!(!r.passed());
        let f: Vec<_> = r.failures().map(|c| c.identity.clone()).collect();
        assert_eq!(f, vec!["delta1∘d on C2".to_string()]);

        let mut c = GradedComplex::zero([1, 1, 1, 1]);
        for i in 0..4 {
            c.boundary[i] = Matrix::from_i64(&[&[1]]);
        }
        let r = validate(&c);
        assert!(r.failures().any(|x| x.identity.starts_with("d∘d") && x.witness.is_some()));
    }

    #[test]
    fn flip_keeps_relation() {
        let mut c = GradedComplex::zero([0, 1, 1, 1]);
        // δ₂ = ∂w with w in C3, u(x) = ½δ₁(x)w.
        c.boundary[3] = Matrix::from_i64(&[&[1]]);
        c.delta1 = Matrix::from_i64(&[&[1]]);
        c.delta2 = Matrix::from_i64(&[&[1]]);
        c.umap[1] = Matrix::from_i64(&[&[1]]).scale(&rat(1, 2));
        assert!(validate(&c).passed());
        assert!(validate(&flip_complex(&c)).passed());
        let mut wrong = c.clone();
        wrong.umap[1] = wrong.umap[1].neg();
        assert!(!validate(&wrong).passed());
        let d = dual_complex(&c).unwrap();
        assert!(validate(&d).passed());
        assert_eq!(d.ranks, [1, 1, 1, 0]);
    }

    #[test]
    fn shape_errors() {
        let c = GradedComplex::new(
            [1, 0, 0, 0],
            std::array::from_fn(|_| Matrix::zeros(0, 0)),
            Matrix::zeros(1, 0),
            Matrix::zeros(0, 1),
            std::array::from_fn(|_| Matrix::zeros(0, 0)),
        );
        assert!(matches!(c, Err(Error::DimensionMismatch(_))));
    }
}
