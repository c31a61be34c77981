use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact::{CyclotomicField, CyclotomicValue};

/// Signature of a nondegenerate Hermitian matrix over `ℚ(ζ_m)` by congruence
/// diagonalisation. Real pivots are signed exactly under the principal
/// embedding. Fails if the form is degenerate.
pub fn hermitian_signature(field: &CyclotomicField, mut h: Vec<Vec<CyclotomicValue>>) -> Result<i64> {
    let mut active: Vec<usize> = (0..h.len()).collect();
    let mut sig = 0i64;
    // Sign of the real factor between the stored block and the true one.
    let mut scale = 1i64;
    // Skipping field inverses pays off only while entry growth stays small.
    let fraction_free = h.len() <= 4;
    while !active.is_empty() {
        let pivot = active
            .iter()
            .copied()
            .filter(|&i| !h[i][i].is_zero())
            .min_by_key(|&i| weight(&h[i][i]));
        let p = match pivot {
            Some(p) => p,
            None => {
                // Zero diagonal: replace e_i by e_i + λ e_j with λ = conj(h_ij),
                // giving a diagonal entry 2|h_ij|² > 0.
                let (i, j) = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !h[i][j].is_zero())
                    .ok_or_else(|| Error::Domain("Hermitian form is degenerate".into()))?;
                let lambda = field.conj(&h[i][j]);
                let lambda_bar = h[i][j].clone();
                for &a in &active {
                    let t = field.mul(&h[a][j], &lambda);
                    h[a][i] = field.add(&h[a][i], &t);
                }
                for &a in &active {
                    let t = field.mul(&lambda_bar, &h[j][a]);
                    h[i][a] = field.add(&h[i][a], &t);
                }
                i
            }
        };
        let d = h[p][p].clone();
        let sd = match field.real_sign(&d) {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => unreachable!("pivot is nonzero"),
        };
        sig += scale * sd;
        active.retain(|&i| i != p);
        if fraction_free {
            // h_ab <- d·h_ab - h_ap·h_pb is d times the Schur complement; d is
            // real, so only its sign is remembered.
            scale *= sd;
            for (ai, &a) in active.iter().enumerate() {
                let hap = h[a][p].clone();
                for &b in &active[ai..] {
                    let mut v = field.mul(&d, &h[a][b]);
                    if !hap.is_zero() && !h[p][b].is_zero() {
                        v = field.sub(&v, &field.mul(&hap, &h[p][b]));
                    }
                    h[a][b] = v;
                }
            }
        } else {
            let dinv = field.inv(&d).expect("nonzero pivot");
            for (ai, &a) in active.iter().enumerate() {
                if h[a][p].is_zero() {
                    continue;
                }
                let f = field.mul(&h[a][p], &dinv);
                for &b in &active[ai..] {
                    if h[p][b].is_zero() {
                        continue;
                    }
                    let t = field.mul(&f, &h[p][b]);
                    h[a][b] = field.sub(&h[a][b], &t);
                }
            }
        }
        // Restore the lower triangle from Hermitian symmetry.
        for (ai, &a) in active.iter().enumerate() {
            for &b in &active[ai + 1..] {
                h[b][a] = field.conj(&h[a][b]);
            }
        }
    }
    Ok(sig)
}

/// Rough size of an element, used to prefer cheap pivots.
fn weight(x: &CyclotomicValue) -> usize {
    x.coeffs()
        .iter()
        .filter(|c| !num_traits::Zero::is_zero(*c))
        .map(|c| (c.numer().bits() + c.denom().bits()) as usize)
        .sum()
}
