//! Closed-manifold invariants: moduli bookkeeping, zero-dimensional
//! Donaldson series, the product case and mapping tori.
//!
//! Closed-manifold energies use the normalization `k + 2αl − α²Σ·Σ`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{evaluation_point, int, rat, HolonomyParam, Rational};
use crate::knotcore::{
    alexander_nonzero_at, alexander_polynomial, clh_invariant, signature_at_point, AmbientSphere, SeifertKnot,
};
use crate::novikov::NovikovElement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliSpec {
    pub k: i64,
    pub l: i64,
    pub alpha: Rational,
    pub b2plus: u32,
    pub b1: u32,
    pub genus: u32,
    pub self_intersection: i64,
}

impl ModuliSpec {
    /// A homology `S¹×S³` containing a torus: `b₂⁺ = 0`, `b¹ = 1`, `g = 1`,
    /// `Σ·Σ = 0`.
    pub fn torus(k: i64, l: i64, alpha: Rational) -> Self {
        ModuliSpec {
            k,
            l,
            alpha,
            b2plus: 0,
            b1: 1,
            genus: 1,
            self_intersection: 0,
        }
    }
}

/// `8k + 4l − 3(b₂⁺ − b¹ + 1) − (2g − 2)`.
pub fn moduli_dimension(s: &ModuliSpec) -> i64 {
    8 * s.k + 4 * s.l - 3 * (s.b2plus as i64 - s.b1 as i64 + 1) - (2 * s.genus as i64 - 2)
}

/// `k + 2αl − α²Σ·Σ`.
pub fn moduli_energy(s: &ModuliSpec) -> Rational {
    int(s.k) + &s.alpha * int(2 * s.l) - &s.alpha * &s.alpha * int(s.self_intersection)
}

/// Counts `D₀(k)` of zero-dimensional moduli spaces, indexed by `k` (with
/// `l = −2k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DonaldsonSeries {
    pub alpha: Rational,
    pub coefficients: BTreeMap<i64, i64>,
}

/// `k(1 − 4α)`.
pub fn zero_dim_energy(k: i64, alpha: &Rational) -> Rational {
    int(k) * (int(1) - alpha * int(4))
}

/// `Σ D₀(k) T^{−k(1−4α)}`.
pub fn zero_dim_series(d: &DonaldsonSeries) -> Result<NovikovElement> {
    let quarter = d.alpha == rat(1, 4);
    let mut terms = Vec::new();
    for (&k, &c) in &d.coefficients {
        let energy = zero_dim_energy(k, &d.alpha);
        if energy.is_negative() {
            return Err(Error::NegativeEnergy { k, energy });
        }
        if quarter && k != 0 && c != 0 {
            return Err(Error::Domain(format!(
                "at alpha = 1/4 the count for k = {k} is zero by convention, got {c}"
            )));
        }
        terms.push((-energy, int(c)));
    }
    Ok(NovikovElement::from_terms(terms, None))
}

/// Product of a circle with `(Y, K)`: `λ_FO = 2λ_CLH`, and the only
/// zero-dimensional count is at `k = 0`.
pub fn product_case(y: &AmbientSphere, knot: &SeifertKnot, h: &HolonomyParam) -> Result<(i64, DonaldsonSeries)> {
    let lambda = 2 * clh_invariant(y, knot, h)?;
    Ok((
        lambda,
        DonaldsonSeries {
            alpha: h.alpha().clone(),
            coefficients: BTreeMap::from([(0, lambda)]),
        },
    ))
}

fn check_period(p: i64) -> Result<()> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::Domain(format!("period p = {p} must be an odd integer >= 3")));
    }
    Ok(())
}

/// Lifts `α′ + j/p`, `j = 0..p−1`.
pub fn mapping_torus_holonomies(alpha_prime: &Rational, p: i64) -> Result<Vec<Rational>> {
    check_period(p)?;
    let alpha = alpha_prime * int(p);
    if !alpha.is_positive() || alpha >= rat(1, 2) {
        return Err(Error::Domain(format!(
            "p * alpha' = {alpha} must lie in the open interval (0, 1/2)"
        )));
    }
    Ok((0..p).map(|j| alpha_prime + rat(j, p)).collect())
}

/// The representative of `x` modulo `1/2` in `[0, 1/2)`; it has the same
/// evaluation point.
pub fn normalized_holonomy(x: &Rational) -> Rational {
    let twice: Rational = x * int(2);
    x - twice.floor() / int(2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTorusInput {
    pub p: i64,
    pub alpha_prime: Rational,
    pub base_casson: i64,
    pub base_knot: SeifertKnot,
}

/// Hypotheses that cannot be read off a Seifert matrix; the caller vouches
/// for them and they are echoed in the report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeometricHypotheses {
    pub branched_cover_is_homology_sphere: bool,
    pub tau_nondegenerate: bool,
}

impl GeometricHypotheses {
    pub fn asserted() -> Self {
        GeometricHypotheses {
            branched_cover_is_homology_sphere: true,
            tau_nondegenerate: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftRecord {
    pub j: i64,
    pub alpha: Rational,
    pub representative: Rational,
    pub admissible: bool,
    pub signature: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTorusReport {
    pub lambda_fo: i64,
    pub casson_term: i64,
    /// `(p, q, r)` with `α′ = r/(pq)`.
    pub pqr: (i64, i64, i64),
    pub lifts: Vec<LiftRecord>,
    pub hypotheses: GeometricHypotheses,
}

fn arithmetic_hypotheses(alpha_prime: &Rational, p: i64) -> Result<(i64, i64, i64)> {
    let num = alpha_prime.numer().to_i64();
    let den = alpha_prime.denom().to_i64();
    let (Some(r), Some(den)) = (num, den) else {
        return Err(Error::Domain("alpha' is too large".into()));
    };
    if den % p != 0 {
        return Err(Error::Domain(format!(
            "alpha' = {alpha_prime} is not of the form r/(pq) with p = {p}"
        )));
    }
    let q = den / p;
    let fail = |why: &str| Err(Error::Domain(format!("alpha' = {r}/({p}*{q}): {why}")));
    if q % 2 == 0 || r % 2 == 0 {
        return fail("p, q, r must all be odd (even parameters are not supported)");
    }
    if p.gcd(&q) != 1 || p.gcd(&r) != 1 || q.gcd(&r) != 1 {
        return fail("p, q, r must be pairwise coprime");
    }
    let ratio = rat(r, q);
    if !ratio.is_positive() || ratio >= rat(1, 2) {
        return fail("r/q must lie in (0, 1/2)");
    }
    Ok((p, q, r))
}

/// `λ_FO = 8pλ_C(Y′) + Σ_j σ_{K′}(exp(−4πi(α′ + j/p)))`.
pub fn mapping_torus_lambda(input: &MappingTorusInput, hyp: GeometricHypotheses) -> Result<MappingTorusReport> {
    let lifts = mapping_torus_holonomies(&input.alpha_prime, input.p)?;
    let delta = alexander_polynomial(&input.base_knot);
    let mut records = Vec::new();
    for (j, a) in lifts.into_iter().enumerate() {
        let w = evaluation_point(&a);
        let ok = w.order() != 1 && alexander_nonzero_at(&delta, &w);
        records.push(LiftRecord {
            j: j as i64,
            representative: normalized_holonomy(&a),
            alpha: a,
            admissible: ok,
            signature: None,
        });
    }
    let bad: Vec<String> = records
        .iter()
        .filter(|r| !r.admissible)
        .map(|r| format!("j = {} (alpha' = {})", r.j, r.alpha))
        .collect();
    if !bad.is_empty() {
        return Err(Error::Domain(format!(
            "the Alexander polynomial vanishes at the lifted holonomies {}",
            bad.join(", ")
        )));
    }
    let pqr = arithmetic_hypotheses(&input.alpha_prime, input.p)?;
    if !(hyp.branched_cover_is_homology_sphere && hyp.tau_nondegenerate) {
        return Err(Error::Domain(
            "the branched cover must be a homology sphere and the involution nondegenerate; assert both".into(),
        ));
    }
    let mut total = 0;
    for r in &mut records {
        let s = signature_at_point(&input.base_knot, &evaluation_point(&r.alpha))?;
        r.signature = Some(s);
        total += s;
    }
    let casson_term = 8 * input.p * input.base_casson;
    Ok(MappingTorusReport {
        lambda_fo: casson_term + total,
        casson_term,
        pqr,
        lifts: records,
        hypotheses: hyp,
    })
}

/// `E(k, −2k, α) = E(−k, 2k, 1/2 − α)`.
pub fn flip_energy_identity(k: i64, alpha: &Rational) -> bool {
    zero_dim_energy(k, alpha) == zero_dim_energy(-k, &(rat(1, 2) - alpha))
}

/// `−(3/2)(χ(W) + σ(W)) − χ(Σ) mod 4`.
pub fn cobordism_grading_shift(chi_w: i64, sigma_w: i64, chi_sigma: i64) -> Result<u8> {
    let s = chi_w + sigma_w;
    if s % 2 != 0 {
        return Err(Error::Domain(format!("chi(W) + sigma(W) = {s} must be even")));
    }
    Ok((-(3 * s / 2) - chi_sigma).rem_euclid(4) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::validate_holonomy;
    use crate::knotcore::torus_knot;
    use crate::novikov::{loop_grading, LoopClass};

    #[test]
    fn dimensions() {
        assert_eq!(moduli_dimension(&ModuliSpec::torus(1, -2, rat(1, 4))), 0);
        assert_eq!(moduli_dimension(&ModuliSpec::torus(0, 0, rat(1, 4))), 0);
        let g2 = ModuliSpec {
            genus: 2,
            ..ModuliSpec::torus(0, 0, rat(1, 5))
        };
        assert_eq!(moduli_dimension(&g2), -2);
        for k in -3..=3 {
            for l in -5..=5 {
                let d = moduli_dimension(&ModuliSpec::torus(k, l, rat(1, 3)))
                    - moduli_dimension(&ModuliSpec::torus(0, 0, rat(1, 3)));
                assert_eq!(d, loop_grading(LoopClass::new(k, l)));
            }
        }
    }

    #[test]
    fn energies() {
        assert_eq!(moduli_energy(&ModuliSpec::torus(1, -2, rat(1, 4))), int(0));
        assert_eq!(moduli_energy(&ModuliSpec::torus(1, -2, rat(1, 8))), rat(1, 2));
        let s = ModuliSpec {
            self_intersection: 0,
            ..ModuliSpec::torus(0, 0, rat(2, 7))
        };
        assert_eq!(moduli_energy(&s), int(0));
        let s = ModuliSpec {
            self_intersection: 3,
            ..ModuliSpec::torus(1, 0, rat(1, 3))
        };
        assert_eq!(moduli_energy(&s), rat(2, 3));
    }

    fn series(alpha: Rational, entries: &[(i64, i64)]) -> DonaldsonSeries {
        DonaldsonSeries {
            alpha,
            coefficients: entries.iter().copied().collect(),
        }
    }

    #[test]
    fn donaldson_series() {
        let x = zero_dim_series(&series(rat(1, 3), &[(0, 5)])).unwrap();
        assert_eq!(x, NovikovElement::constant(int(5)));
        let x = zero_dim_series(&series(rat(1, 8), &[(0, 2), (1, 3)])).unwrap();
        assert_eq!(x, "2 + 3*T^(-1/2)".parse().unwrap());
        assert!(matches!(
            zero_dim_series(&series(rat(1, 8), &[(-1, 1)])),
            Err(Error::NegativeEnergy { k: -1, .. })
        ));
        assert!(zero_dim_series(&series(rat(1, 4), &[(0, 1), (2, 1)])).is_err());
        assert_eq!(
            zero_dim_series(&series(rat(1, 4), &[(0, 7), (2, 0)])).unwrap(),
            NovikovElement::constant(int(7))
        );
        // Above 1/4 the energy sign flips, so positive k is rejected.
        assert!(zero_dim_series(&series(rat(1, 3), &[(-1, 4)])).is_ok());
        assert!(zero_dim_series(&series(rat(1, 3), &[(1, 4)])).is_err());
    }

    #[test]
    fn product() {
        let h = validate_holonomy(&rat(1, 4)).unwrap();
        let (l, s) = product_case(&AmbientSphere::s3(), &SeifertKnot::unknot(), &h).unwrap();
        assert_eq!((l, s.coefficients[&0]), (0, 0));
        let (l, s) = product_case(&AmbientSphere::s3(), &SeifertKnot::trefoil(), &h).unwrap();
        assert_eq!((l, s.coefficients.clone()), (-2, BTreeMap::from([(0, -2)])));
        assert_eq!(zero_dim_series(&s).unwrap(), NovikovElement::constant(int(-2)));
        let h3 = validate_holonomy(&rat(1, 3)).unwrap();
        let (l, _) = product_case(&AmbientSphere::with_casson(1), &SeifertKnot::unknot(), &h3).unwrap();
        assert_eq!(l, 8);
        let h12 = validate_holonomy(&rat(1, 12)).unwrap();
        assert!(product_case(&AmbientSphere::s3(), &SeifertKnot::trefoil(), &h12).is_err());
    }

    #[test]
    fn holonomy_lifts() {
        let l = mapping_torus_holonomies(&rat(1, 15), 3).unwrap();
        assert_eq!(l, vec![rat(1, 15), rat(6, 15), rat(11, 15)]);
        assert_eq!(normalized_holonomy(&rat(11, 15)), rat(7, 30));
        assert_eq!(normalized_holonomy(&rat(6, 15)), rat(2, 5));
        assert!(mapping_torus_holonomies(&rat(1, 10), 3).is_ok());
        assert!(mapping_torus_holonomies(&rat(1, 6), 3).is_err());
        assert!(mapping_torus_holonomies(&rat(1, 15), 4).is_err());
        assert!(mapping_torus_holonomies(&rat(1, 15), 1).is_err());
    }

    fn torus_input(knot: SeifertKnot, alpha_prime: Rational, p: i64, casson: i64) -> MappingTorusInput {
        MappingTorusInput {
            p,
            alpha_prime,
            base_casson: casson,
            base_knot: knot,
        }
    }

    #[test]
    fn mapping_torus_examples() {
        let hyp = GeometricHypotheses::asserted();
        let r = mapping_torus_lambda(&torus_input(SeifertKnot::trefoil(), rat(1, 15), 3, 0), hyp).unwrap();
        assert_eq!(r.lambda_fo, -4);
        assert_eq!(r.pqr, (3, 5, 1));
        let sig: Vec<_> = r.lifts.iter().map(|l| l.signature.unwrap()).collect();
        assert_eq!(sig, vec![0, -2, -2]);
        assert_eq!(r.lifts[2].representative, rat(7, 30));

        let r = mapping_torus_lambda(&torus_input(SeifertKnot::unknot(), rat(1, 15), 3, 2), hyp).unwrap();
        assert_eq!(r.lambda_fo, 48);

        // Even denominators are rejected after admissibility.
        let e = mapping_torus_lambda(&torus_input(SeifertKnot::trefoil(), rat(1, 12), 3, 0), hyp).unwrap_err();
        assert!(e.to_string().contains("j = 0"), "{e}");
        let e = mapping_torus_lambda(&torus_input(SeifertKnot::unknot(), rat(1, 12), 3, 0), hyp).unwrap_err();
        assert!(e.to_string().contains("odd"), "{e}");
        assert!(mapping_torus_lambda(
            &torus_input(SeifertKnot::trefoil(), rat(1, 15), 3, 0),
            GeometricHypotheses {
                tau_nondegenerate: false,
                ..hyp
            }
        )
        .is_err());
    }

    #[test]
    fn mapping_torus_other_knots() {
        let hyp = GeometricHypotheses::asserted();
        let k = torus_knot(2, 5).unwrap();
        // α′ = 1/21 with p = 3, q = 7, r = 1.
        let r = mapping_torus_lambda(&torus_input(k.clone(), rat(1, 21), 3, 1), hyp).unwrap();
        let direct: i64 = [rat(1, 21), rat(8, 21), rat(15, 21)]
            .iter()
            .map(|a| signature_at_point(&k, &evaluation_point(&normalized_holonomy(a))).unwrap())
            .sum();
        assert_eq!(r.lambda_fo, 24 + direct);
    }

    #[test]
    fn flip_and_shift() {
        assert!(flip_energy_identity(1, &rat(1, 8)));
        assert!(flip_energy_identity(3, &rat(1, 3)));
        assert!(flip_energy_identity(0, &rat(2, 9)));
        assert_eq!(cobordism_grading_shift(0, 0, 0).unwrap(), 0);
        assert_eq!(cobordism_grading_shift(2, 0, 0).unwrap(), 1);
        assert_eq!(cobordism_grading_shift(0, 0, 2).unwrap(), 2);
        assert!(cobordism_grading_shift(1, 0, 0).is_err());
    }
}
