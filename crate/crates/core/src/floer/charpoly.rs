//! Power traces versus characteristic polynomials.

use crate::error::{Error, Result};
use crate::exact::int;
use crate::novikov::NovikovElement;

use super::matrix::Matrix;

/// Coefficients `c_0, ..., c_n` of `det(xI − A)` (so `c_n = 1`), by the
/// Faddeev-LeVerrier recursion. Only rational divisions occur.
pub fn characteristic_polynomial(a: &Matrix) -> Result<Vec<NovikovElement>> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch("characteristic polynomial of a non-square matrix".into()));
    }
    let mut c = vec![NovikovElement::zero(); n + 1];
    c[n] = NovikovElement::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        mk = a.mul(&mk)?.add(&Matrix::scalar(n, &c[n - k + 1]))?;
        let t = a.mul(&mk)?.trace();
        c[n - k] = t.scale(&(int(-1) / int(k as i64)));
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TracePowerReport {
    pub hypothesis_holds: bool,
    /// Smallest `n` in the window with `tr(Aⁿ) ≠ tr(Bⁿ)`.
    pub first_violation: Option<usize>,
    /// Compared only when the hypothesis holds.
    pub charpoly_equal: Option<bool>,
}

impl TracePowerReport {
    /// The implication "equal traces on the window ⇒ equal characteristic
    /// polynomials"; vacuously true when the hypothesis fails.
    pub fn outcome(&self) -> bool {
        !self.hypothesis_holds || self.charpoly_equal == Some(true)
    }

    /// The two matrices were told apart, by traces or by the polynomial.
    pub fn distinguished(&self) -> bool {
        !self.hypothesis_holds || self.charpoly_equal == Some(false)
    }
}

fn same(x: &NovikovElement, y: &NovikovElement) -> Result<bool> {
    let d = x.sub(y);
    if d.is_zero() {
        return Ok(true);
    }
    if d.has_no_known_terms() {
        return Err(Error::FloorExhausted(format!("cannot compare {x} and {y}")));
    }
    Ok(false)
}

/// Checks `tr(Aⁿ) = tr(Bⁿ)` for `m ≤ n < 2r + m` and, when that holds,
/// compares the characteristic polynomials.
pub fn trace_powers_determine_charpoly(a: &Matrix, b: &Matrix, m: usize) -> Result<TracePowerReport> {
    let r = a.rows();
    if a.shape() != (r, r) || b.shape() != (r, r) {
        return Err(Error::DimensionMismatch("trace comparison needs square matrices of one size".into()));
    }
    let mut pa = Matrix::identity(r);
    let mut pb = Matrix::identity(r);
    for _ in 0..m {
        pa = pa.mul(a)?;
        pb = pb.mul(b)?;
    }
    let mut first_violation = None;
    for n in m..2 * r + m {
        if !same(&pa.trace(), &pb.trace())? {
            first_violation = Some(n);
            break;
        }
        pa = pa.mul(a)?;
        pb = pb.mul(b)?;
    }
    if first_violation.is_some() {
        return Ok(TracePowerReport {
            hypothesis_holds: false,
            first_violation,
            charpoly_equal: None,
        });
    }
    let ca = characteristic_polynomial(a)?;
    let cb = characteristic_polynomial(b)?;
    let mut eq = true;
    for (x, y) in ca.iter().zip(&cb) {
        eq &= same(x, y)?;
    }
    Ok(TracePowerReport {
        hypothesis_holds: true,
        first_violation: None,
        charpoly_equal: Some(eq),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nv(s: &str) -> NovikovElement {
        s.parse().unwrap()
    }

    #[test]
    fn charpoly_of_small_matrices() {
        let a = Matrix::from_i64(&[&[2, 1], &[0, 3]]);
        let c = characteristic_polynomial(&a).unwrap();
        let ints: Vec<_> = c.iter().map(|x| x.to_string()).collect();
        assert_eq!(ints, vec!["6*T^(0)", "-5*T^(0)", "1*T^(0)"]);
        assert_eq!(characteristic_polynomial(&Matrix::zeros(0, 0)).unwrap().len(), 1);
    }

    #[test]
    fn examples() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let r = trace_powers_determine_charpoly(&a, &a, 1).unwrap();
        assert!(r.outcome() && r.hypothesis_holds);

        let a = Matrix::from_rows(vec![vec![nv("1")]]).unwrap();
        let b = Matrix::from_rows(vec![vec![nv("T^(-1)")]]).unwrap();
        let r = trace_powers_determine_charpoly(&a, &b, 1).unwrap();
        assert!(!r.hypothesis_holds);
        assert_eq!(r.first_violation, Some(1));
        assert!(r.outcome());

        let a = Matrix::from_rows(vec![vec![nv("T"), nv("1")], vec![nv("0"), nv("T^(-1/2)")]]).unwrap();
        let p = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let b = p.mul(&a).unwrap().mul(&p).unwrap();
        let r = trace_powers_determine_charpoly(&a, &b, 1).unwrap();
        assert_eq!(r.charpoly_equal, Some(true));
    }

    #[test]
    fn nilpotent_and_zero_agree() {
        // Nilpotent vs zero: traces of all positive powers agree, and so do
        // the polynomials, so the implication holds.
        let n = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let z = Matrix::zeros(2, 2);
        let r = trace_powers_determine_charpoly(&n, &z, 1).unwrap();
        assert_eq!(r.charpoly_equal, Some(true));
    }
}
