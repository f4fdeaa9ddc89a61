//! Sylvester resultants computed exactly by fraction-free Bareiss
//! elimination on the polynomial-entry matrix. Every division in the
//! Bareiss recurrence is exact in the polynomial ring, so no rational
//! arithmetic is needed.

use super::mpoly::{MPoly, Var};
use crate::error::Error;

/// Resultant of `p` and `q` with respect to `var`, as the determinant of
/// the Sylvester matrix with `p`'s coefficient rows on top.
pub fn sylvester_resultant(p: &MPoly, q: &MPoly, var: Var) -> Result<MPoly, Error> {
    let dp = p.degree_in(var) as usize;
    let dq = q.degree_in(var) as usize;
    if p.is_zero() || q.is_zero() || dp == 0 || dq == 0 {
        return Err(Error::ResultantDegree);
    }
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let size = dp + dq;
    let mut m = vec![vec![MPoly::zero(); size]; size];
    for i in 0..dq {
        for j in 0..=dp {
            m[i][i + j] = pc[dp - j].clone();
        }
    }
    for i in 0..dp {
        for j in 0..=dq {
            m[dq + i][i + j] = qc[dq - j].clone();
        }
    }
    Ok(bareiss_determinant(m))
}

/// Fraction-free determinant; the `k`-th elimination step divides by the
/// previous pivot, which Bareiss guarantees to be exact over an integral
/// domain.
fn bareiss_determinant(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one();
    }
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                return MPoly::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t
                    .div_exact(&prev)
                    .expect("Bareiss pivots divide exactly in an integral domain");
            }
            m[i][k] = MPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}
