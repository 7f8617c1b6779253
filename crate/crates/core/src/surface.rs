//! The surface `Omega = { Q = 0 }` and the polynomials derived from it.
//!
//! `Q` is a symmetric polynomial of degree 12, written through the elementary
//! symmetric functions `s1, s2, s3` of `(a1, a2, a3)`. Along the ray
//! `(a t, b t, t/2)` it restricts to a degree-12 polynomial `p(t)` whose real
//! roots in `(0, 1]` are exactly the intersections of the ray with `Omega`
//! inside the cube.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Ring, UniPoly};
use crate::rational::{int, rat, serde_rational, sign, to_exact_string, Rational};
use crate::resultant::discriminant;
use crate::roots::{isolate_roots, IsolatingInterval, SturmChain};

fn k<T: Ring>(n: i64) -> T {
    T::from_int(n)
}

/// `Q` as a function of the elementary symmetric values.
pub fn q_from_symmetrics<T: Ring>(s1: &T, s2: &T, s3: &T) -> T {
    let (s1, s2, s3) = (s1.clone(), s2.clone(), s3.clone());
    let s1p = |e: u32| s1.pow(e);
    let s3p = |e: u32| s3.pow(e);

    let lin = k::<T>(2) * s1.clone() + k::<T>(4) * s3.clone() - k(1);
    let quint = k::<T>(64) * s1p(5) - k::<T>(64) * s1p(4) + k::<T>(8) * s1p(3) + k::<T>(12) * s1p(2)
        - k::<T>(6) * s1.clone()
        + k(1)
        + k::<T>(240) * s3.clone() * s1p(2)
        - k::<T>(240) * s3.clone() * s1.clone()
        - k::<T>(1536) * s3p(2) * s1.clone()
        - k::<T>(4096) * s3p(3)
        + k::<T>(60) * s3.clone()
        + k::<T>(768) * s3p(2);
    let m32 = k::<T>(2) * s1.clone() - k::<T>(32) * s3.clone() - k(1);
    let term0 = lin.clone() * quint;
    let term1 = k::<T>(8)
        * s1.clone()
        * lin
        * m32.clone()
        * (k::<T>(10) * s1.clone() + k::<T>(32) * s3.clone() - k(5))
        * s2.clone();
    let term2 = k::<T>(16)
        * s1p(2)
        * (k::<T>(13) - k::<T>(52) * s1.clone() + k::<T>(640) * s3.clone() * s1.clone() + k::<T>(1024) * s3p(2)
            - k::<T>(320) * s3.clone()
            + k::<T>(52) * s1p(2))
        * s2.pow(2);
    let half_less = k::<T>(2) * s1.clone() - k(1);
    let term3 = k::<T>(64) * half_less.clone() * m32 * s2.pow(3);
    let term4 = k::<T>(2048) * s1.clone() * half_less * s2.pow(4);
    term0 - term1 - term2 + term3 + term4
}

/// `Q(a1, a2, a3)` over any ring.
pub fn q_generic<T: Ring>(a1: &T, a2: &T, a3: &T) -> T {
    let s1 = a1.clone() + a2.clone() + a3.clone();
    let s2 = a1.clone() * a2.clone() + a1.clone() * a3.clone() + a2.clone() * a3.clone();
    let s3 = a1.clone() * a2.clone() * a3.clone();
    q_from_symmetrics(&s1, &s2, &s3)
}

/// A point of the parameter cube. Coordinates satisfy `0 < ai <= 1/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubePoint {
    #[serde(with = "serde_rational")]
    pub a1: Rational,
    #[serde(with = "serde_rational")]
    pub a2: Rational,
    #[serde(with = "serde_rational")]
    pub a3: Rational,
}

impl CubePoint {
    /// Checks `0 < ai <= 1/2`.
    pub fn new(a1: Rational, a2: Rational, a3: Rational) -> Result<Self> {
        let half = rat(1, 2);
        for (name, v) in [("a1", &a1), ("a2", &a2), ("a3", &a3)] {
            if !(v > &Rational::zero() && v <= &half) {
                return Err(Error::Domain(format!("{name} = {} not in (0, 1/2]", to_exact_string(v))));
            }
        }
        Ok(CubePoint { a1, a2, a3 })
    }

    /// Like [`CubePoint::new`] but also excludes the faces `ai = 1/2`.
    pub fn new_interior(a1: Rational, a2: Rational, a3: Rational) -> Result<Self> {
        let p = Self::new(a1, a2, a3)?;
        if !p.is_interior() {
            return Err(Error::Domain("point not in the open cube (0, 1/2)^3".into()));
        }
        Ok(p)
    }

    /// No domain check; for intermediate values only.
    pub fn unchecked(a1: Rational, a2: Rational, a3: Rational) -> Self {
        CubePoint { a1, a2, a3 }
    }

    pub fn is_interior(&self) -> bool {
        let half = rat(1, 2);
        self.coords().iter().all(|c| c > &&Rational::zero() && c < &&half)
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.a1, &self.a2, &self.a3]
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.coords().map(crate::rational::to_f64)
    }

    /// `(a1, a2, a3) -> (a2, a3, a1)`.
    pub fn rotate(&self) -> CubePoint {
        CubePoint::unchecked(self.a2.clone(), self.a3.clone(), self.a1.clone())
    }
}

pub fn elementary_symmetrics(p: &CubePoint) -> (Rational, Rational, Rational) {
    let s1 = &p.a1 + &p.a2 + &p.a3;
    let s2 = &p.a1 * &p.a2 + &p.a1 * &p.a3 + &p.a2 * &p.a3;
    let s3 = &p.a1 * &p.a2 * &p.a3;
    (s1, s2, s3)
}

pub fn eval_q(p: &CubePoint) -> Rational {
    let (s1, s2, s3) = elementary_symmetrics(p);
    q_from_symmetrics(&s1, &s2, &s3)
}

/// The ray `(a t, b t, t/2)`, `t in [0, 1]`, ending on the face `a3 = 1/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RayParams {
    #[serde(with = "serde_rational")]
    pub a: Rational,
    #[serde(with = "serde_rational")]
    pub b: Rational,
}

impl RayParams {
    /// Checks `(a, b) in (0, 1/2]^2`.
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        let half = rat(1, 2);
        for (name, v) in [("a", &a), ("b", &b)] {
            if !(v > &Rational::zero() && v <= &half) {
                return Err(Error::Domain(format!("{name} = {} not in (0, 1/2]", to_exact_string(v))));
            }
        }
        Ok(RayParams { a, b })
    }

    pub fn from_ratios(a: (i64, i64), b: (i64, i64)) -> Result<Self> {
        Self::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    /// Whether `(a, b)` lies in the open square `K = (0, 1/2)^2`.
    pub fn in_k(&self) -> bool {
        let half = rat(1, 2);
        self.a < half && self.b < half
    }

    /// The cube point at parameter `t`.
    pub fn point_at(&self, t: &Rational) -> CubePoint {
        CubePoint::unchecked(&self.a * t, &self.b * t, t / int(2))
    }

    pub fn swapped(&self) -> RayParams {
        RayParams { a: self.b.clone(), b: self.a.clone() }
    }
}

/// `p(t) = Q(a t, b t, t/2)`, by exact substitution.
pub fn build_p(r: &RayParams) -> UniPoly {
    let t = UniPoly::var();
    let a1 = t.scale(&r.a);
    let a2 = t.scale(&r.b);
    let a3 = t.scale(&rat(1, 2));
    q_generic(&a1, &a2, &a3)
}

pub fn f_generic<T: Ring>(a: &T, b: &T) -> T {
    let (a, b) = (a.clone(), b.clone());
    k::<T>(40) * a.pow(3) - k::<T>(24) * a.pow(2) * b.clone() - k::<T>(24) * a.clone() * b.pow(2)
        + k::<T>(40) * b.pow(3)
        - k::<T>(12) * a.pow(2)
        + k::<T>(12) * b.clone() * a.clone()
        - k::<T>(12) * b.pow(2)
        - k::<T>(6) * a
        - k::<T>(6) * b
        + k(5)
}

/// The cubic factor of the discriminant of `p` that must not vanish on `K`.
pub fn eval_f(a: &Rational, b: &Rational) -> Rational {
    f_generic(a, b)
}

pub fn g_generic<T: Ring>(a1: &T, a2: &T) -> T {
    let (x, y) = (a1.clone(), a2.clone());
    let xy4 = k::<T>(4) * x.clone() * y.clone();
    let sum = x.clone() + y.clone();
    let first =
        k::<T>(4) * sum.clone() * (xy4.clone() - k(1)) * (xy4.clone() - sum.clone() + k(1)) * (xy4 + sum + k(1));
    let second = (k::<T>(16) * x.pow(2) * y.pow(2) + k(1))
        * (k::<T>(13) * x.pow(2) + k::<T>(22) * x.clone() * y.clone() + k::<T>(13) * y.pow(2));
    let third = k::<T>(4)
        * (x.pow(2) + y.pow(2))
        * (k::<T>(11) * x.pow(2) + k::<T>(18) * x * y.clone() + k::<T>(11) * y.pow(2));
    first + second - third
}

/// `G(a1, a2)`, whose zero set in the face `a3 = 1/2` is the curve Gamma.
pub fn eval_g(a1: &Rational, a2: &Rational) -> Rational {
    g_generic(a1, a2)
}

/// `G(x, x)` as a polynomial in `x`.
pub fn g_on_diagonal() -> UniPoly {
    let x = UniPoly::var();
    g_generic(&x, &x)
}

/// Minimal polynomial `4x^2 + 2x - 1` of the cusp coordinate `(sqrt5 - 1)/4`.
pub fn cusp_minimal_polynomial() -> UniPoly {
    UniPoly::from_ints(&[-1, 2, 4])
}

/// `p(1) == -4 (a+b)^2 G(a, b)`, exactly.
pub fn verify_p1_identity(r: &RayParams) -> bool {
    let lhs = build_p(r).eval(&Rational::one());
    let s = &r.a + &r.b;
    let rhs = -int(4) * &s * &s * eval_g(&r.a, &r.b);
    lhs == rhs
}

/// Factors of `p` on the diagonal `b = a`: `(t + 1, p2, p3)` with
/// `p = -(t+1) p2 p3^3`.
pub fn diagonal_factors(a: &Rational) -> (UniPoly, UniPoly, UniPoly) {
    let one = Rational::one();
    let lin = UniPoly::from_ints(&[1, 1]);
    let p2 = UniPoly::new(vec![one.clone(), -int(2) * (&one + int(2) * a), int(2) + int(4) * a]);
    let p3 =
        UniPoly::new(vec![one.clone(), -(&one + int(4) * a), Rational::zero(), int(8) * a * a * (int(2) * a + &one)]);
    (lin, p2, p3)
}

/// Factors of `p` on the edge `b = 1/2`: `(2at + 1, p2, p3)` with
/// `p = -(2at+1) p2 p3^3`.
pub fn edge_factors(a: &Rational) -> (UniPoly, UniPoly, UniPoly) {
    let one = Rational::one();
    let lin = UniPoly::new(vec![one.clone(), int(2) * a]);
    let p2 = UniPoly::new(vec![one.clone(), -int(2) * (&one + int(2) * a), int(4) * a * (int(2) * a + &one)]);
    let p3 = UniPoly::new(vec![one.clone(), -int(2) * (a + &one), Rational::zero(), int(2) * (&one + int(2) * a)]);
    (lin, p2, p3)
}

fn factored(lin: &UniPoly, p2: &UniPoly, p3: &UniPoly) -> UniPoly {
    let cube = p3.pow(3);
    -(&(lin * p2) * &cube)
}

/// `build_p(a, a) == -(t+1) p2 p3^3` coefficient by coefficient.
pub fn verify_diagonal_factorization(a: &Rational) -> bool {
    let (lin, p2, p3) = diagonal_factors(a);
    build_p(&RayParams { a: a.clone(), b: a.clone() }) == factored(&lin, &p2, &p3)
}

/// `build_p(a, 1/2) == -(2at+1) p2 p3^3` coefficient by coefficient.
pub fn verify_edge_factorization(a: &Rational) -> bool {
    let (lin, p2, p3) = edge_factors(a);
    build_p(&RayParams { a: a.clone(), b: rat(1, 2) }) == factored(&lin, &p2, &p3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscriminantLocus {
    ZeroOnDiagonal,
    PositiveOffDiagonal,
    Violation,
}

/// Classifies the exact discriminant of `p` against the expected pattern:
/// zero exactly on `a = b`, strictly positive elsewhere in `K`.
pub fn discriminant_locus_check(r: &RayParams) -> DiscriminantLocus {
    let d = match discriminant(&build_p(r)) {
        Ok(d) => d,
        Err(_) => return DiscriminantLocus::Violation,
    };
    match (r.a == r.b, sign(&d)) {
        (true, 0) => DiscriminantLocus::ZeroOnDiagonal,
        (false, 1) => DiscriminantLocus::PositiveOffDiagonal,
        _ => DiscriminantLocus::Violation,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionK {
    K1,
    K2,
    OnGamma,
}

/// Classifies points of `K` by the sign of `G`, calibrated at the two
/// reference points `(3/10, 3/10)` (in `K1`) and `(31/100, 31/100)` (in `K2`).
#[derive(Clone, Debug)]
pub struct RegionClassifier {
    k1_sign: i8,
    k2_sign: i8,
}

impl RegionClassifier {
    pub fn k1_reference() -> RayParams {
        RayParams { a: rat(3, 10), b: rat(3, 10) }
    }

    pub fn k2_reference() -> RayParams {
        RayParams { a: rat(31, 100), b: rat(31, 100) }
    }

    pub fn new() -> Result<Self> {
        let r1 = Self::k1_reference();
        let r2 = Self::k2_reference();
        Self::calibrated(sign(&eval_g(&r1.a, &r1.b)), sign(&eval_g(&r2.a, &r2.b)))
    }

    fn calibrated(k1_sign: i8, k2_sign: i8) -> Result<Self> {
        if k1_sign == 0 || k2_sign == 0 || k1_sign == k2_sign {
            return Err(Error::Calibration);
        }
        Ok(RegionClassifier { k1_sign, k2_sign })
    }

    pub fn k1_sign(&self) -> i8 {
        self.k1_sign
    }

    pub fn classify(&self, r: &RayParams) -> RegionK {
        let s = sign(&eval_g(&r.a, &r.b));
        if s == 0 {
            RegionK::OnGamma
        } else if s == self.k1_sign {
            RegionK::K1
        } else {
            debug_assert_eq!(s, self.k2_sign);
            RegionK::K2
        }
    }
}

pub fn classify_region(r: &RayParams) -> Result<RegionK> {
    Ok(RegionClassifier::new()?.classify(r))
}

/// Roots of `p` in `(0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRoots {
    pub count: usize,
    pub roots: Vec<IsolatingInterval>,
}

/// Distinct roots of `build_p(r)` in `(0, 1]`. `p(0) = -1`, so the left end
/// never hides a root.
pub fn count_unit_roots(r: &RayParams) -> UnitRoots {
    let p = build_p(r);
    let (zero, one) = (Rational::zero(), Rational::one());
    let count = SturmChain::new(&p).expect("p is nonzero").count(&zero, &one);
    let roots = isolate_roots(&p, &zero, &one).expect("valid interval");
    debug_assert_eq!(roots.len(), count);
    UnitRoots { count, roots }
}

/// Expected number of unit roots on the edge `b = 1/2` as a function of `a`:
/// one below `sqrt2/4`, two from `sqrt2/4` up to (excluding) `1/2`, and one
/// (of multiplicity 8) at the corner.
pub fn edge_expected_count(a: &Rational) -> usize {
    if a == &rat(1, 2) || int(8) * a * a < int(1) {
        1
    } else {
        2
    }
}
