//! Exact rational arithmetic, roots of unity and holonomy parameters.
//!
//! Roots of unity are stored by their *turn* `r ∈ [0, 1)`, standing for
//! `exp(2πi r)`. The holonomy convention is `ω = exp(-4πiα)`, i.e. the
//! turn of `ω` is `(-2α) mod 1`.

pub mod cyclotomic;
pub mod poly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub use cyclotomic::{eval_laurent_at_root, CyclotomicField, CyclotomicValue};
pub use poly::{LaurentPoly, QPoly};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// A point `exp(2πi·turn)` on the unit circle with rational turn.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitRootPoint {
    turn: Rational,
    order: u64,
}

impl UnitRootPoint {
    pub fn from_turn(turn: &Rational) -> Self {
        let turn = frac(turn);
        let order = turn
            .denom()
            .to_u64()
            .expect("root of unity order exceeds u64");
        UnitRootPoint { turn, order }
    }

    pub fn turn(&self) -> &Rational {
        &self.turn
    }

    /// Multiplicative order, equal to the denominator of the turn.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent `n` such that this point is `ζ_m^n` for the principal
    /// primitive root `ζ_m = exp(2πi/m)`, `m = order`.
    pub fn exponent(&self) -> u64 {
        self.turn.numer().to_u64().expect("turn numerator fits in u64")
    }

    pub fn conjugate(&self) -> Self {
        UnitRootPoint::from_turn(&(Rational::one() - &self.turn))
    }

    pub fn to_f64_angle(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.turn.to_f64().unwrap_or(0.0)
    }
}

/// Rational holonomy parameter `α ∈ (0, 1/2)` with its evaluation point and
/// minimal cone parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HolonomyParam {
    alpha: Rational,
    omega: UnitRootPoint,
    cone_nu: u64,
}

impl HolonomyParam {
    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn omega(&self) -> &UnitRootPoint {
        &self.omega
    }

    pub fn cone_nu(&self) -> u64 {
        self.cone_nu
    }

    /// The flipped parameter `1/2 - α`.
    pub fn flip(&self) -> HolonomyParam {
        validate_holonomy(&(rat(1, 2) - &self.alpha)).expect("flip stays in (0, 1/2)")
    }
}

fn check_open_half(alpha: &Rational) -> Result<()> {
    if alpha.is_positive() && alpha < &rat(1, 2) {
        Ok(())
    } else {
        Err(Error::HolonomyOutOfRange(alpha.clone()))
    }
}

/// Validates `α ∈ (0, 1/2)` and computes `ω = exp(-4πiα)` and the minimal
/// cone parameter `ν` (smallest `ν ≥ 1` with `2αν ∈ ℤ`).
pub fn validate_holonomy(alpha: &Rational) -> Result<HolonomyParam> {
    check_open_half(alpha)?;
    let omega = unit_root_of(alpha)?;
    Ok(HolonomyParam {
        alpha: alpha.clone(),
        omega,
        cone_nu: cone_parameter(alpha),
    })
}

/// `ν = q` for odd `q`, `q/2` for even `q`, where `α = p/q` in lowest terms.
pub fn cone_parameter(alpha: &Rational) -> u64 {
    let q = alpha.denom().to_u64().expect("denominator fits in u64");
    if q.is_even() {
        q / 2
    } else {
        q
    }
}

/// The evaluation point `exp(-4πiα)`, i.e. turn `(-2α) mod 1`.
pub fn unit_root_of(alpha: &Rational) -> Result<UnitRootPoint> {
    check_open_half(alpha)?;
    Ok(UnitRootPoint::from_turn(&(-(alpha * int(2)))))
}

/// Evaluation point `exp(-4πiα)` for any rational `α`, without the range
/// check. Used for lifted holonomies `α′ + j/p` that may exceed 1/2.
pub fn evaluation_point(alpha: &Rational) -> UnitRootPoint {
    UnitRootPoint::from_turn(&(-(alpha * int(2))))
}
