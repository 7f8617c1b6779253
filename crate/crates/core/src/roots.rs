//! Real root counting and isolation with Sturm sequences.
//!
//! Every count here is exact. Chains are built on the square-free part, so
//! repeated factors (cubes of cubics are common in this crate) never break
//! the sign-variation count; multiplicities are recovered separately from the
//! repeated-gcd chain.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{int, sign, to_exact_string, Rational};

/// A rational interval holding exactly one distinct real root.
///
/// `lo == hi` marks a root known exactly. Otherwise `lo < hi`, the root lies
/// in `(lo, hi)` and neither endpoint is a root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingInterval {
    #[serde(with = "crate::rational::serde_rational")]
    pub lo: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub hi: Rational,
    pub multiplicity: usize,
}

impl IsolatingInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// `p / gcd(p, p')`, made monic.
pub fn square_free_part(p: &UniPoly) -> UniPoly {
    if p.degree() <= 0 {
        return p.monic();
    }
    let g = p.gcd(&p.derivative());
    p.exact_div(&g).monic()
}

/// Sturm chain of a polynomial, built on its square-free part.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sq = square_free_part(p);
        let mut chain = vec![sq.clone()];
        if sq.degree() > 0 {
            let mut prev = sq;
            let mut cur = prev.derivative().sign_normalized();
            while !cur.is_zero() {
                // Positive rescaling keeps the signs the classical chain would give.
                let next = (-prev.rem(&cur)).sign_normalized();
                chain.push(cur.clone());
                prev = cur;
                cur = next;
            }
        }
        Ok(SturmChain { chain })
    }

    /// The square-free polynomial the chain starts from.
    pub fn base(&self) -> &UniPoly {
        &self.chain[0]
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Sign variations at `x`, zeros dropped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for q in &self.chain {
            let s = sign(&q.eval(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    ///
    /// With zeros dropped, the variation count at a root equals the count just
    /// to its right, so the classical difference already counts `(lo, hi]`
    /// whether or not either endpoint is a root.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    /// Distinct real roots in the closed interval `[lo, hi]`.
    pub fn count_closed(&self, lo: &Rational, hi: &Rational) -> usize {
        let at_lo = usize::from(self.base().eval(lo).is_zero());
        self.count(lo, hi) + at_lo
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointPolicy {
    /// Count roots in `(lo, hi]`.
    HalfOpenRightClosed,
}

fn check_interval(lo: &Rational, hi: &Rational) -> Result<()> {
    if lo >= hi {
        return Err(Error::BadInterval { lo: to_exact_string(lo), hi: to_exact_string(hi) });
    }
    Ok(())
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &UniPoly, lo: &Rational, hi: &Rational, policy: EndpointPolicy) -> Result<usize> {
    check_interval(lo, hi)?;
    let chain = SturmChain::new(p)?;
    Ok(match policy {
        EndpointPolicy::HalfOpenRightClosed => chain.count(lo, hi),
    })
}

/// Isolating intervals for every distinct root of `p` in `(lo, hi]`, sorted,
/// each tagged with its multiplicity in `p`.
pub fn isolate_roots(p: &UniPoly, lo: &Rational, hi: &Rational) -> Result<Vec<IsolatingInterval>> {
    check_interval(lo, hi)?;
    let chain = SturmChain::new(p)?;
    let sq = chain.base().clone();
    let mut found = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), chain.count(lo, hi))];
    while let Some((l, h, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            found.push(tighten_single(&chain, &sq, l, h));
            continue;
        }
        let m = (&l + &h) / int(2);
        let left = chain.count(&l, &m);
        stack.push((m.clone(), h, n - left));
        stack.push((l, m, left));
    }
    found.sort_by(|a, b| a.lo.cmp(&b.lo));
    let gcd_chain = multiplicity_chain(p);
    for iv in &mut found {
        iv.multiplicity = multiplicity_in_chain(&gcd_chain, iv);
    }
    Ok(found)
}

/// `(l, h]` holds exactly one root. Returns an interval whose endpoints are
/// not roots, or an exact point.
fn tighten_single(chain: &SturmChain, sq: &UniPoly, mut l: Rational, h: Rational) -> IsolatingInterval {
    if sq.eval(&h).is_zero() {
        return IsolatingInterval { lo: h.clone(), hi: h, multiplicity: 1 };
    }
    let mut h = h;
    // A root at `l` belongs to the neighbouring interval; move `l` off it.
    while sq.eval(&l).is_zero() {
        let m = (&l + &h) / int(2);
        if sq.eval(&m).is_zero() {
            return IsolatingInterval { lo: m.clone(), hi: m, multiplicity: 1 };
        }
        if chain.count(&l, &m) == 1 {
            h = m;
        } else {
            l = m;
        }
    }
    IsolatingInterval { lo: l, hi: h, multiplicity: 1 }
}

/// `p, gcd(p, p'), gcd(g, g'), ...` down to a constant.
fn multiplicity_chain(p: &UniPoly) -> Vec<SturmChain> {
    let mut out = Vec::new();
    let mut g = p.clone();
    while g.degree() > 0 {
        out.push(SturmChain::new(&g).expect("nonzero"));
        g = g.gcd(&g.derivative());
    }
    out
}

fn multiplicity_in_chain(chain: &[SturmChain], iv: &IsolatingInterval) -> usize {
    chain.iter().take_while(|c| c.count_closed(&iv.lo, &iv.hi) > 0).count()
}

/// Multiplicity in `p` of the single root isolated by `iv`.
pub fn multiplicity_of_root(p: &UniPoly, iv: &IsolatingInterval) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if iv.lo > iv.hi {
        return Err(Error::BadInterval { lo: to_exact_string(&iv.lo), hi: to_exact_string(&iv.hi) });
    }
    let chain = SturmChain::new(p)?;
    let n = chain.count_closed(&iv.lo, &iv.hi);
    if n != 1 {
        return Err(Error::NotIsolating { lo: to_exact_string(&iv.lo), hi: to_exact_string(&iv.hi), count: n });
    }
    Ok(multiplicity_in_chain(&multiplicity_chain(p), iv))
}

/// A rational within `tol` of the root isolated by `iv`, by exact bisection on
/// the sign of the square-free part.
pub fn refine_root(p: &UniPoly, iv: &IsolatingInterval, tol: &Rational) -> Result<Rational> {
    if iv.is_exact() {
        return Ok(iv.lo.clone());
    }
    if !tol.is_positive() {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let sq = square_free_part(p);
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let s_lo = sign(&sq.eval(&lo));
    if s_lo == 0 {
        return Ok(lo);
    }
    let two = int(2);
    // Midpoint of [lo, hi] is within (hi - lo)/2 of the root.
    while &hi - &lo >= tol * &two {
        let m = (&lo + &hi) / &two;
        let s = sign(&sq.eval(&m));
        if s == 0 {
            return Ok(m);
        }
        if s == s_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
    Ok((lo + hi) / two)
}
