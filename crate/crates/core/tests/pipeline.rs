use ski_core::exact::{rat, validate_holonomy};
use ski_core::floer::{h_invariant, homology, lefschetz, CobordismEndomorphism, GradedComplex};
use ski_core::invariants::{mapping_torus_lambda, product_case, zero_dim_series, GeometricHypotheses, MappingTorusInput};
use ski_core::knotcore::{clh_invariant, levine_tristram_signature, torus_knot, AmbientSphere, SeifertKnot};
use ski_core::su2oracle::herald_consistency;
use ski_core::Error;

#[test]
fn trefoil_from_knot_to_series() {
    let k = SeifertKnot::trefoil();
    let h = validate_holonomy(&rat(1, 4)).unwrap();
    let y = AmbientSphere::s3();
    assert_eq!(clh_invariant(&y, &k, &h).unwrap(), -1);

    let (lambda, series) = product_case(&y, &k, &h).unwrap();
    assert_eq!(lambda, -2);
    let z = zero_dim_series(&series).unwrap();

    // two generators in odd grading, no differential: trace of id is -2
    let c = GradedComplex::zero([0, 2, 0, 0]);
    assert_eq!(homology(&c).unwrap().dims, [0, 2, 0, 0]);
    assert_eq!(h_invariant(&c).unwrap(), 0);
    assert_eq!(lefschetz(&c, &CobordismEndomorphism::identity(c.ranks), 10).unwrap(), z);
}

#[test]
fn oracle_agrees_with_signature() {
    for (a, b, p, q) in [(2, 3, 1, 4), (2, 5, 1, 5), (3, 4, 2, 9), (2, 7, 3, 8)] {
        let h = validate_holonomy(&rat(p, q)).unwrap();
        let r = herald_consistency(a, b, &h, 2000).unwrap();
        let sigma = levine_tristram_signature(&torus_knot(a, b).unwrap(), &h).unwrap();
        assert!(r.pass);
        assert_eq!(r.oracle_count as i64, sigma.abs() / 2, "T({a},{b}) at {p}/{q}");
    }
}

#[test]
fn mapping_torus_toy_model() {
    let input = MappingTorusInput {
        p: 3,
        alpha_prime: rat(1, 15),
        base_casson: 0,
        base_knot: SeifertKnot::trefoil(),
    };
    let r = mapping_torus_lambda(&input, GeometricHypotheses::asserted()).unwrap();
    assert_eq!(r.lambda_fo, -4);
    assert_eq!(r.lifts.iter().filter_map(|l| l.signature).sum::<i64>(), -4);

    let unvouched = GeometricHypotheses {
        branched_cover_is_homology_sphere: true,
        tau_nondegenerate: false,
    };
    assert!(matches!(mapping_torus_lambda(&input, unvouched), Err(Error::Domain(_))));
}
