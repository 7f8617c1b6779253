//! Dense univariate polynomials over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{int, parse_rational, to_exact_string, Rational};

/// Minimal commutative-ring interface, so the same formula can be evaluated
/// over rationals, polynomials and floats.
pub trait Ring: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn from_int(n: i64) -> Self;

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Ring for Rational {
    fn from_int(n: i64) -> Self {
        int(n)
    }
}

impl Ring for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }
}

/// Coefficients are stored lowest degree first; the vector never ends in a
/// zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `t`.
    pub fn var() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `c0 + c1 t`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + crate::rational::to_f64(c))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    /// Scales by `1/|lc|`: the leading coefficient becomes ±1 and the sign of
    /// the polynomial is preserved everywhere.
    pub fn sign_normalized(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().abs().recip();
        self.scale(&inv)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        if self.degree() < dd {
            return (UniPoly::zero(), self.clone());
        }
        let lc_inv = d.leading().recip();
        let mut quot = vec![Rational::zero(); (self.degree() - dd + 1) as usize];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd as usize] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd as usize);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            // Keep remainders monic to hold coefficient growth down.
            b = r.monic();
        }
        a.monic()
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// `p(t) -> p(c0 + c1 t)`.
    pub fn compose_linear(&self, c0: &Rational, c1: &Rational) -> UniPoly {
        let lin = UniPoly::linear(c0.clone(), c1.clone());
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficients `L * p` where `L` is [`Self::denominator_lcm`].
    pub fn integer_coeffs(&self) -> Vec<num_bigint::BigInt> {
        let l = Rational::from_integer(self.denominator_lcm());
        self.coeffs.iter().map(|c| (c * &l).to_integer()).collect()
    }
}

impl Ring for UniPoly {
    fn from_int(n: i64) -> Self {
        UniPoly::constant(int(n))
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sep = if c.is_negative() {
                if first {
                    "-"
                } else {
                    " - "
                }
            } else if first {
                ""
            } else {
                " + "
            };
            let a = c.abs();
            let coef = if a.is_one() && k > 0 { String::new() } else { a.to_string() };
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let star = if !coef.is_empty() && !mono.is_empty() { "*" } else { "" };
            write!(f, "{sep}{coef}{star}{mono}")?;
            first = false;
        }
        Ok(())
    }
}

/// JSON form: array of `"num/den"` strings, index = degree.
impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(to_exact_string).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<crate::error::Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(UniPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn derivative_power_rule() {
        let p = UniPoly::from_ints(&[1, -2, 1]);
        assert_eq!(p.derivative(), UniPoly::from_ints(&[-2, 2]));
        assert!(UniPoly::from_ints(&[5]).derivative().is_zero());
        assert_eq!(UniPoly::from_ints(&[5]).derivative().degree(), -1);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = UniPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(UniPoly::from_ints(&[0, 0]).degree(), -1);
    }

    #[test]
    fn division_reconstructs() {
        let a = UniPoly::from_ints(&[3, 0, -2, 5, 1]);
        let d = UniPoly::new(vec![rat(1, 2), int(3)]);
        let (q, r) = a.div_rem(&d);
        assert!(r.degree() < d.degree());
        assert_eq!(&(&q * &d) + &r, a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = UniPoly::from_ints(&[-1, 1]); // t - 1
        let a = &f * &UniPoly::from_ints(&[2, 1]);
        let b = &f * &UniPoly::from_ints(&[-3, 0, 1]);
        assert_eq!(a.gcd(&b), f);
        assert_eq!(UniPoly::zero().gcd(&UniPoly::zero()), UniPoly::zero());
    }

    #[test]
    fn compose_linear_matches_evaluation() {
        let p = UniPoly::from_ints(&[1, -3, 0, 2]);
        let q = p.compose_linear(&rat(1, 3), &rat(-2, 5));
        for x in [rat(0, 1), rat(7, 4), rat(-3, 2)] {
            assert_eq!(q.eval(&x), p.eval(&(rat(1, 3) + rat(-2, 5) * &x)));
        }
    }

    #[test]
    fn json_uses_num_den_strings() {
        let p = UniPoly::new(vec![rat(-1, 2), int(0), rat(6, 4)]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"["-1/2","0/1","3/2"]"#);
        let back: UniPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        let p = UniPoly::from_ints(&[125, -275, 0, 144]);
        assert_eq!(p.to_string(), "144*t^3 - 275*t + 125");
    }
}
