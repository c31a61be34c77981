//! ℤ/4-graded chain complexes over the Novikov field: homology, reduced
//! groups, the h-invariant, Lefschetz numbers, duality and flip.

mod charpoly;
mod complex;
pub mod generate;
mod homology;
mod matrix;

pub use charpoly::{characteristic_polynomial, trace_powers_determine_charpoly, TracePowerReport};
pub use complex::{
    dual_complex, dual_endomorphism, flip_complex, validate, CobordismEndomorphism, GradedComplex, IdentityCheck,
    ValidationReport,
};
pub use homology::{
    check_splitting_identity, euler_characteristic, h_invariant, homology, lefschetz, reduced_homology,
    GradedVectorSpace, SplittingReport,
};
pub use matrix::{certified_zero, Echelon, Fraction, Matrix};
