//! Positivity certificates for bivariate polynomials on rational boxes.
//!
//! A box is certified when a lower bound of the polynomial over it is
//! strictly positive. The bound re-centres the polynomial at the box centre
//! and bounds every monomial of the shifted form over the symmetric
//! half-widths, which keeps the bound tight near an isolated zero. Boxes that
//! cannot be certified are split into four until `max_depth`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Ring;
use crate::rational::{int, rat, serde_rational, sign, Rational};
use crate::surface::f_generic;

/// Sparse bivariate polynomial: `sum c * a^i * b^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    terms: Vec<(u32, u32, Rational)>,
}

impl BiPoly {
    pub fn new(terms: Vec<(u32, u32, Rational)>) -> Self {
        let mut out: Vec<(u32, u32, Rational)> = Vec::new();
        for (i, j, c) in terms {
            match out.iter_mut().find(|(p, q, _)| *p == i && *q == j) {
                Some(t) => t.2 += c,
                None => out.push((i, j, c)),
            }
        }
        out.retain(|t| !t.2.is_zero());
        out.sort_by_key(|t| (t.0, t.1));
        BiPoly { terms: out }
    }

    pub fn terms(&self) -> &[(u32, u32, Rational)] {
        &self.terms
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(i, j, c)| c * Ring::pow(a, *i) * Ring::pow(b, *j))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// `P(ca + u, cb + v)` as a polynomial in `(u, v)`.
    pub fn shifted(&self, ca: &Rational, cb: &Rational) -> BiPoly {
        let mut out = Vec::new();
        for (i, j, c) in &self.terms {
            for p in 0..=*i {
                let ba = binomial(*i, p) * Ring::pow(ca, i - p);
                for q in 0..=*j {
                    let bb = binomial(*j, q) * Ring::pow(cb, j - q);
                    out.push((p, q, c * &ba * bb));
                }
            }
        }
        BiPoly::new(out)
    }

    /// Bounds on the values over `|u| <= hu, |v| <= hv`.
    pub fn range_over_centered_box(&self, hu: &Rational, hv: &Rational) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (p, q, c) in &self.terms {
            let m = Ring::pow(hu, *p) * Ring::pow(hv, *q);
            let (mono_lo, mono_hi) = if p % 2 == 0 && q % 2 == 0 { (Rational::zero(), m) } else { (-m.clone(), m) };
            let (mono_lo, mono_hi) =
                if *p == 0 && *q == 0 { (Rational::one(), Rational::one()) } else { (mono_lo, mono_hi) };
            if c.is_positive() {
                lo += c * &mono_lo;
                hi += c * &mono_hi;
            } else {
                lo += c * &mono_hi;
                hi += c * &mono_lo;
            }
        }
        (lo, hi)
    }
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * int((n - i) as i64) / int((i + 1) as i64);
    }
    acc
}

impl Ring for BiPoly {
    fn from_int(n: i64) -> Self {
        BiPoly::new(vec![(0, 0, int(n))])
    }
}

impl std::ops::Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        BiPoly::new(self.terms.into_iter().chain(rhs.terms).collect())
    }
}

impl std::ops::Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.terms.into_iter().map(|(i, j, c)| (i, j, -c)).collect())
    }
}

impl std::ops::Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        self + (-rhs)
    }
}

impl std::ops::Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (i, j, c) in &self.terms {
            for (p, q, d) in &rhs.terms {
                out.push((i + p, j + q, c * d));
            }
        }
        BiPoly::new(out)
    }
}

/// `F(a, b)` in monomial form.
pub fn f_bipoly() -> BiPoly {
    let a = BiPoly::new(vec![(1, 0, int(1))]);
    let b = BiPoly::new(vec![(0, 1, int(1))]);
    f_generic(&a, &b)
}

/// Closed rational box `[a_lo, a_hi] x [b_lo, b_hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatBox {
    #[serde(with = "serde_rational")]
    pub a_lo: Rational,
    #[serde(with = "serde_rational")]
    pub a_hi: Rational,
    #[serde(with = "serde_rational")]
    pub b_lo: Rational,
    #[serde(with = "serde_rational")]
    pub b_hi: Rational,
}

impl RatBox {
    pub fn new(a_lo: Rational, a_hi: Rational, b_lo: Rational, b_hi: Rational) -> Self {
        assert!(a_lo <= a_hi && b_lo <= b_hi, "empty box");
        RatBox { a_lo, a_hi, b_lo, b_hi }
    }

    pub fn square(lo: Rational, hi: Rational) -> Self {
        Self::new(lo.clone(), hi.clone(), lo, hi)
    }

    pub fn contains(&self, a: &Rational, b: &Rational) -> bool {
        &self.a_lo <= a && a <= &self.a_hi && &self.b_lo <= b && b <= &self.b_hi
    }

    fn center(&self) -> (Rational, Rational) {
        let two = int(2);
        ((&self.a_lo + &self.a_hi) / &two, (&self.b_lo + &self.b_hi) / &two)
    }

    fn half_widths(&self) -> (Rational, Rational) {
        let two = int(2);
        ((&self.a_hi - &self.a_lo) / &two, (&self.b_hi - &self.b_lo) / &two)
    }

    fn quarters(&self) -> [RatBox; 4] {
        let (ca, cb) = self.center();
        [
            RatBox::new(self.a_lo.clone(), ca.clone(), self.b_lo.clone(), cb.clone()),
            RatBox::new(ca.clone(), self.a_hi.clone(), self.b_lo.clone(), cb.clone()),
            RatBox::new(self.a_lo.clone(), ca.clone(), cb.clone(), self.b_hi.clone()),
            RatBox::new(ca, self.a_hi.clone(), cb, self.b_hi.clone()),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertNode {
    /// Lower bound over the box is strictly positive.
    Positive {
        #[serde(rename = "box")]
        bx: RatBox,
        #[serde(with = "serde_rational")]
        lower_bound: Rational,
    },
    /// The polynomial is non-positive somewhere in the box (witness given).
    Refuted {
        #[serde(rename = "box")]
        bx: RatBox,
        #[serde(with = "serde_rational")]
        witness_a: Rational,
        #[serde(with = "serde_rational")]
        witness_b: Rational,
    },
    /// Depth exhausted without a decision.
    Unresolved {
        #[serde(rename = "box")]
        bx: RatBox,
    },
    Split {
        #[serde(rename = "box")]
        bx: RatBox,
        children: Vec<CertNode>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertOutcome {
    Positive,
    Inconclusive,
    Refuted,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub outcome: CertOutcome,
    pub region: RatBox,
    pub max_depth: u32,
    pub deepest_level: u32,
    pub leaves: usize,
    #[serde(with = "serde_rational")]
    pub min_lower_bound: Rational,
    pub tree: CertNode,
}

struct Builder<'a> {
    poly: &'a BiPoly,
    max_depth: u32,
    deepest: u32,
    leaves: usize,
    min_lb: Option<Rational>,
    refuted: bool,
    unresolved: bool,
}

impl Builder<'_> {
    fn visit(&mut self, bx: RatBox, depth: u32) -> CertNode {
        self.deepest = self.deepest.max(depth);
        let (ca, cb) = bx.center();
        let centre_value = self.poly.eval(&ca, &cb);
        if sign(&centre_value) <= 0 {
            self.leaves += 1;
            self.refuted = true;
            return CertNode::Refuted { bx, witness_a: ca, witness_b: cb };
        }
        let (hu, hv) = bx.half_widths();
        let (lo, _) = self.poly.shifted(&ca, &cb).range_over_centered_box(&hu, &hv);
        if lo.is_positive() {
            self.leaves += 1;
            if self.min_lb.as_ref().is_none_or(|m| &lo < m) {
                self.min_lb = Some(lo.clone());
            }
            return CertNode::Positive { bx, lower_bound: lo };
        }
        if depth >= self.max_depth {
            self.leaves += 1;
            self.unresolved = true;
            return CertNode::Unresolved { bx };
        }
        let children = bx.quarters().into_iter().map(|q| self.visit(q, depth + 1)).collect();
        CertNode::Split { bx, children }
    }
}

/// Tries to prove `poly > 0` on `region` by subdivision.
pub fn certify_positive(poly: &BiPoly, region: &RatBox, max_depth: u32) -> Certificate {
    let mut b = Builder { poly, max_depth, deepest: 0, leaves: 0, min_lb: None, refuted: false, unresolved: false };
    let tree = b.visit(region.clone(), 0);
    let outcome = if b.refuted {
        CertOutcome::Refuted
    } else if b.unresolved {
        CertOutcome::Inconclusive
    } else {
        CertOutcome::Positive
    };
    Certificate {
        outcome,
        region: region.clone(),
        max_depth,
        deepest_level: b.deepest,
        leaves: b.leaves,
        min_lower_bound: b.min_lb.unwrap_or_else(Rational::zero),
        tree,
    }
}

/// Certifies `F > 0` on `[delta, 1/2 - delta]^2`.
pub fn certify_f_nonvanishing(delta: &Rational, max_depth: u32) -> Result<Certificate> {
    if !(delta.is_positive() && delta < &rat(1, 4)) {
        return Err(Error::Domain("delta must lie in (0, 1/4)".into()));
    }
    if max_depth < 1 {
        return Err(Error::Domain("max_depth must be at least 1".into()));
    }
    let region = RatBox::square(delta.clone(), rat(1, 2) - delta);
    Ok(certify_positive(&f_bipoly(), &region, max_depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::eval_f;

    #[test]
    fn f_bipoly_matches_direct_evaluation() {
        let f = f_bipoly();
        assert_eq!(f.terms().len(), 10);
        for (a, b) in [(rat(1, 3), rat(2, 7)), (rat(-1, 2), rat(5, 3)), (int(0), int(0))] {
            assert_eq!(f.eval(&a, &b), eval_f(&a, &b));
        }
    }

    #[test]
    fn shift_preserves_values() {
        let f = f_bipoly();
        let (ca, cb) = (rat(1, 5), rat(3, 8));
        let g = f.shifted(&ca, &cb);
        let (u, v) = (rat(1, 11), rat(-2, 9));
        assert_eq!(g.eval(&u, &v), f.eval(&(&ca + &u), &(&cb + &v)));
    }

    #[test]
    fn range_encloses_samples() {
        let f = f_bipoly();
        let g = f.shifted(&rat(1, 4), &rat(1, 4));
        let (lo, hi) = g.range_over_centered_box(&rat(1, 8), &rat(1, 8));
        for i in -4..=4 {
            for j in -4..=4 {
                let v = g.eval(&rat(i, 32), &rat(j, 32));
                assert!(lo <= v && v <= hi);
            }
        }
    }

    #[test]
    fn positive_certificate_with_margin() {
        let cert = certify_f_nonvanishing(&rat(1, 100), 20).unwrap();
        assert_eq!(cert.outcome, CertOutcome::Positive);
        assert!(cert.min_lower_bound.is_positive());
    }

    #[test]
    fn corner_box_is_inconclusive() {
        let region = RatBox::square(rat(1, 4), rat(1, 2));
        let cert = certify_positive(&f_bipoly(), &region, 12);
        assert_eq!(cert.outcome, CertOutcome::Inconclusive);
        assert_eq!(cert.deepest_level, 12);
    }

    #[test]
    fn negative_polynomial_is_refuted() {
        let p = BiPoly::new(vec![(0, 0, int(-1)), (2, 0, int(1))]);
        let cert = certify_positive(&p, &RatBox::square(int(0), rat(1, 2)), 4);
        assert_eq!(cert.outcome, CertOutcome::Refuted);
    }

    #[test]
    fn rejects_bad_delta() {
        assert!(certify_f_nonvanishing(&rat(1, 4), 3).is_err());
        assert!(certify_f_nonvanishing(&int(0), 3).is_err());
        assert!(certify_f_nonvanishing(&rat(1, 10), 0).is_err());
    }
}
