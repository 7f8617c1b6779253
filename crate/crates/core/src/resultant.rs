//! Resultants and discriminants via fraction-free (Bareiss) elimination on
//! the Sylvester matrix.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::Rational;

/// Determinant of a square integer matrix by Bareiss elimination with row
/// pivoting. Every intermediate division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Sylvester matrix of two integer coefficient vectors (lowest degree first).
fn sylvester(p: &[BigInt], q: &[BigInt]) -> Vec<Vec<BigInt>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in p.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in q.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res(p, q)`, the determinant of the Sylvester matrix.
///
/// Both inputs are scaled to integer coefficients first; since
/// `Res(λp, q) = λ^deg(q) Res(p, q)` the scaling is divided back out.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<Rational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::UndefinedResultant);
    }
    let (lp, lq) = (p.denominator_lcm(), q.denominator_lcm());
    let (ip, iq) = (p.integer_coeffs(), q.integer_coeffs());
    let det = bareiss_determinant(sylvester(&ip, &iq));
    let dp = p.degree() as u32;
    let dq = q.degree() as u32;
    let scale = lp.pow(dq) * lq.pow(dp);
    Ok(Rational::new(det, scale))
}

/// `(-1)^(n(n-1)/2) Res(p, p') / lc(p)` for `n = deg p >= 2`.
pub fn discriminant(p: &UniPoly) -> Result<Rational> {
    let n = p.degree();
    if n < 2 {
        return Err(Error::DegreeTooLow(n));
    }
    let res = resultant(p, &p.derivative())?;
    let d = res / p.leading();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}
