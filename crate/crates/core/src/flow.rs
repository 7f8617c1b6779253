//! The normalized Ricci flow on generalized Wallach spaces as an ODE on
//! `x in R^3_{>0}`, with equilibria, Jacobian spectra and a
//! degeneracy scan along parameter paths.
//!
//! The field is homogeneous of degree 0 in `x`, so `J x = 0` everywhere and
//! one eigenvalue of every Jacobian is structurally zero. Degeneracy is
//! measured on the two transverse eigenvalues, the roots of
//! `l^2 - tr(J) l + M2(J)`.

use num_complex::Complex64;
use num_traits::{Num, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{int, rat, serde_rational, to_f64, Rational};
use crate::roots::{isolate_roots, refine_root};
use crate::surface::{q_generic, CubePoint};

pub const POSITIVITY_FLOOR: f64 = 1e-9;
pub const NEWTON_TOLERANCE: f64 = 1e-12;
/// Relative step of the central difference Jacobian.
pub const FD_STEP: f64 = 1e-6;

/// Parameters `(a1, a2, a3) in (0, 1/2]^3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WallachParams {
    #[serde(with = "serde_rational")]
    pub a1: Rational,
    #[serde(with = "serde_rational")]
    pub a2: Rational,
    #[serde(with = "serde_rational")]
    pub a3: Rational,
}

impl WallachParams {
    pub fn new(a1: Rational, a2: Rational, a3: Rational) -> Result<Self> {
        let p = CubePoint::new(a1, a2, a3)?;
        Ok(Self::from(&p))
    }

    pub fn symmetric(a: Rational) -> Result<Self> {
        Self::new(a.clone(), a.clone(), a)
    }

    pub fn exact(&self) -> [Rational; 3] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone()]
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [to_f64(&self.a1), to_f64(&self.a2), to_f64(&self.a3)]
    }

    pub fn as_point(&self) -> CubePoint {
        CubePoint::unchecked(self.a1.clone(), self.a2.clone(), self.a3.clone())
    }
}

impl From<&CubePoint> for WallachParams {
    fn from(p: &CubePoint) -> Self {
        WallachParams { a1: p.a1.clone(), a2: p.a2.clone(), a3: p.a3.clone() }
    }
}

pub type MetricState = [f64; 3];

/// The right-hand side `(f, g, h)` over any field. Requires `x_i != 0`.
pub fn vector_field_generic<T: Clone + Num>(a: &[T; 3], x: &[T; 3]) -> [T; 3] {
    let [x1, x2, x3] = x.clone();
    let one = T::one();
    let r1 = x1.clone() / (x2.clone() * x3.clone());
    let r2 = x2.clone() / (x1.clone() * x3.clone());
    let r3 = x3.clone() / (x1.clone() * x2.clone());
    let inv_sum = one.clone() / a[0].clone() + one.clone() / a[1].clone() + one.clone() / a[2].clone();
    let b = (one.clone() / (a[0].clone() * x1.clone())
        + one.clone() / (a[1].clone() * x2.clone())
        + one.clone() / (a[2].clone() * x3.clone())
        - (r1.clone() + r2.clone() + r3.clone()))
        / inv_sum;
    let comp = |ai: &T, xi: &T, own: &T, o1: &T, o2: &T| {
        T::zero() - one.clone() - ai.clone() * xi.clone() * (own.clone() - o1.clone() - o2.clone())
            + xi.clone() * b.clone()
    };
    [comp(&a[0], &x1, &r1, &r2, &r3), comp(&a[1], &x2, &r2, &r3, &r1), comp(&a[2], &x3, &r3, &r1, &r2)]
}

fn check_positive<T: PartialOrd + Zero>(x: &[T; 3]) -> Result<()> {
    if x.iter().any(|v| *v <= T::zero()) {
        return Err(Error::Domain("metric state must be strictly positive".into()));
    }
    Ok(())
}

pub fn vector_field(p: &WallachParams, x: &MetricState) -> Result<[f64; 3]> {
    check_positive(x)?;
    Ok(vector_field_generic(&p.to_f64(), x))
}

pub fn vector_field_exact(p: &WallachParams, x: &[Rational; 3]) -> Result<[Rational; 3]> {
    check_positive(x)?;
    Ok(vector_field_generic(&p.exact(), x))
}

/// `sum_i f_i / (a_i x_i)`, which vanishes identically: the flow preserves
/// `sum_i ln(x_i) / a_i`.
pub fn volume_drift_exact(p: &WallachParams, x: &[Rational; 3]) -> Result<Rational> {
    let f = vector_field_exact(p, x)?;
    let a = p.exact();
    Ok((0..3).map(|i| &f[i] / (&a[i] * &x[i])).sum())
}

fn norm(v: &[f64; 3]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    StepsExhausted,
    PositivityViolated,
    Converged,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    pub states: Vec<MetricState>,
    pub terminated_reason: Termination,
}

impl TrajectoryRecord {
    pub fn last(&self) -> &MetricState {
        self.states.last().expect("trajectory holds the initial state")
    }

    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "t,x1,x2,x3")?;
        for (t, x) in self.times.iter().zip(&self.states) {
            writeln!(w, "{t},{},{},{}", x[0], x[1], x[2])?;
        }
        Ok(())
    }
}

/// Classical RK4. Stops when a component drops to [`POSITIVITY_FLOOR`] or
/// when the field norm falls below `convergence_tol`.
pub fn integrate(
    p: &WallachParams,
    x0: &MetricState,
    dt: f64,
    steps: usize,
    convergence_tol: f64,
) -> Result<TrajectoryRecord> {
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::Domain("dt must be positive".into()));
    }
    check_positive(x0)?;
    let a = p.to_f64();
    let field = |x: &[f64; 3]| vector_field_generic(&a, x);
    let mut rec =
        TrajectoryRecord { times: vec![0.0], states: vec![*x0], terminated_reason: Termination::StepsExhausted };
    let mut x = *x0;
    for step in 0..steps {
        let k1 = field(&x);
        if norm(&k1) < convergence_tol {
            rec.terminated_reason = Termination::Converged;
            return Ok(rec);
        }
        let add = |base: &[f64; 3], k: &[f64; 3], s: f64| [base[0] + s * k[0], base[1] + s * k[1], base[2] + s * k[2]];
        let k2 = field(&add(&x, &k1, dt / 2.0));
        let k3 = field(&add(&x, &k2, dt / 2.0));
        let k4 = field(&add(&x, &k3, dt));
        for i in 0..3 {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        rec.times.push((step + 1) as f64 * dt);
        rec.states.push(x);
        if x.iter().any(|&v| v.is_nan() || v <= POSITIVITY_FLOOR) {
            rec.terminated_reason = Termination::PositivityViolated;
            return Ok(rec);
        }
    }
    if norm(&field(&x)) < convergence_tol {
        rec.terminated_reason = Termination::Converged;
    }
    Ok(rec)
}

pub type Matrix3 = [[f64; 3]; 3];

/// Jacobian of `f` at `x` by central differences with step `FD_STEP |x_j|`.
pub fn jacobian_central<F: Fn(&[f64; 3]) -> [f64; 3]>(f: F, x: &[f64; 3]) -> Matrix3 {
    let mut j = [[0.0; 3]; 3];
    for col in 0..3 {
        let h = FD_STEP * x[col].abs().max(1e-3);
        let (mut xp, mut xm) = (*x, *x);
        xp[col] += h;
        xm[col] -= h;
        let (fp, fm) = (f(&xp), f(&xm));
        for row in 0..3 {
            j[row][col] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    j
}

/// Forward differences with step `sqrt(eps) |x_j|`; an independent check on
/// [`jacobian_central`].
pub fn jacobian_forward<F: Fn(&[f64; 3]) -> [f64; 3]>(f: F, x: &[f64; 3]) -> Matrix3 {
    let mut j = [[0.0; 3]; 3];
    let f0 = f(x);
    for col in 0..3 {
        let h = f64::EPSILON.sqrt() * x[col].abs().max(1e-3);
        let mut xp = *x;
        xp[col] += h;
        let fp = f(&xp);
        for row in 0..3 {
            j[row][col] = (fp[row] - f0[row]) / h;
        }
    }
    j
}

pub fn flow_jacobian(p: &WallachParams, x: &MetricState) -> Result<Matrix3> {
    check_positive(x)?;
    let a = p.to_f64();
    Ok(jacobian_central(|y| vector_field_generic(&a, y), x))
}

fn trace(m: &Matrix3) -> f64 {
    m[0][0] + m[1][1] + m[2][2]
}

/// Sum of the principal 2x2 minors.
fn minor_sum(m: &Matrix3) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2]
        - m[1][2] * m[2][1]
}

fn det(m: &Matrix3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Roots of `l^3 + c2 l^2 + c1 l + c0` by Cardano's formula, each polished by
/// two Newton steps.
pub fn cubic_roots(c2: f64, c1: f64, c0: f64) -> [Complex64; 3] {
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2.powi(3) / 27.0 - c2 * c1 / 3.0 + c0;
    let shift = Complex64::new(-c2 / 3.0, 0.0);
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let disc = Complex64::new(q * q / 4.0 + p.powi(3) / 27.0, 0.0).sqrt();
    let mut u3 = Complex64::new(-q / 2.0, 0.0) + disc;
    if u3.norm() < 1e-300 {
        u3 = Complex64::new(-q / 2.0, 0.0) - disc;
    }
    let poly = |l: Complex64| ((l + c2) * l + c1) * l + c0;
    let dpoly = |l: Complex64| (3.0 * l + 2.0 * c2) * l + c1;
    let mut out = [Complex64::zero(); 3];
    let u = if u3.norm() < 1e-300 { Complex64::zero() } else { u3.powf(1.0 / 3.0) };
    let mut w = Complex64::new(1.0, 0.0);
    for slot in &mut out {
        let uk = u * w;
        let y = if uk.norm() < 1e-300 { Complex64::zero() } else { uk - p / (3.0 * uk) };
        let mut l = y + shift;
        for _ in 0..2 {
            let d = dpoly(l);
            if d.norm() > 1e-300 {
                let next = l - poly(l) / d;
                if poly(next).norm() < poly(l).norm() {
                    l = next;
                }
            }
        }
        *slot = l;
        w *= omega;
    }
    out
}

/// Eigenvalues of a 3x3 matrix from its characteristic polynomial.
pub fn matrix_spectrum(m: &Matrix3) -> [Complex64; 3] {
    cubic_roots(-trace(m), minor_sum(m), -det(m))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// All three eigenvalues as `[re, im]`.
    pub eigenvalues: [[f64; 2]; 3],
    /// Smallest modulus among the two transverse eigenvalues.
    pub min_abs: f64,
    /// Smallest modulus among all three, which includes the structural zero.
    pub min_abs_full: f64,
}

/// Spectrum of the flow Jacobian at `x`. `min_abs` excludes the structural
/// zero eigenvalue along the scaling direction.
pub fn jacobian_spectrum(p: &WallachParams, x: &MetricState) -> Result<Spectrum> {
    let j = flow_jacobian(p, x)?;
    Ok(spectrum_of(&j))
}

pub fn spectrum_of(j: &Matrix3) -> Spectrum {
    let eig = matrix_spectrum(j);
    let (tr, m2) = (trace(j), minor_sum(j));
    let d = Complex64::new(tr * tr - 4.0 * m2, 0.0).sqrt();
    let transverse = [(tr + d) / 2.0, (tr - d) / 2.0];
    Spectrum {
        eigenvalues: eig.map(|z| [z.re, z.im]),
        min_abs: transverse.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min),
        min_abs_full: eig.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min),
    }
}

/// Solves a 3x3 linear system by Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn solve3(mut m: Matrix3, mut b: [f64; 3]) -> Option<[f64; 3]> {
    for k in 0..3 {
        let piv = (k..3).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs()))?;
        if m[piv][k].abs() < 1e-300 {
            return None;
        }
        m.swap(k, piv);
        b.swap(k, piv);
        for i in k + 1..3 {
            let f = m[i][k] / m[k][k];
            for c in k..3 {
                m[i][c] -= f * m[k][c];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = [0.0; 3];
    for k in (0..3).rev() {
        let s: f64 = (k + 1..3).map(|c| m[k][c] * x[c]).sum();
        x[k] = (b[k] - s) / m[k][k];
    }
    Some(x)
}

/// Damped Newton on `(f, g, sum_i ln(x_i / guess_i) / a_i)`. The last
/// equation pins the scale, which the field itself leaves free; together
/// with the conserved volume it forces `h = 0` as well.
pub fn find_equilibrium(p: &WallachParams, guess: &MetricState) -> Result<MetricState> {
    check_positive(guess)?;
    let a = p.to_f64();
    let g0 = *guess;
    let system = |x: &[f64; 3]| {
        let f = vector_field_generic(&a, x);
        let vol: f64 = (0..3).map(|i| (x[i] / g0[i]).ln() / a[i]).sum();
        [f[0], f[1], vol]
    };
    let fail = |why: &str| Error::NoEquilibrium(why.to_string());
    let mut x = *guess;
    for _ in 0..100 {
        if norm(&vector_field_generic(&a, &x)) < NEWTON_TOLERANCE {
            return Ok(x);
        }
        let r = system(&x);
        let j = jacobian_central(system, &x);
        let step = solve3(j, r.map(|v| -v)).ok_or_else(|| fail("singular Newton system"))?;
        let r0 = norm(&r);
        let mut lambda = 1.0;
        loop {
            let trial = [x[0] + lambda * step[0], x[1] + lambda * step[1], x[2] + lambda * step[2]];
            if trial.iter().all(|&v| v > POSITIVITY_FLOOR) && norm(&system(&trial)) < r0 {
                x = trial;
                break;
            }
            lambda /= 2.0;
            if lambda < 1e-10 {
                if r0 < 1e-10 && norm(&vector_field_generic(&a, &x)) < NEWTON_TOLERANCE * 10.0 {
                    return Ok(x);
                }
                return Err(fail("line search stalled"));
            }
        }
    }
    Err(fail("no convergence in 100 iterations"))
}

/// Evenly spaced parameters from `start` to `end` inclusive.
pub fn parameter_path(start: &WallachParams, end: &WallachParams, steps: usize) -> Vec<WallachParams> {
    let (s, e) = (start.exact(), end.exact());
    let last = steps.max(2) - 1;
    (0..=last)
        .map(|k| {
            let u = rat(k as i64, last as i64);
            let c = |i: usize| &s[i] + (&e[i] - &s[i]) * &u;
            WallachParams { a1: c(0), a2: c(1), a3: c(2) }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub param: [f64; 3],
    /// Path coordinate in `[0, 1]`.
    pub s: f64,
    pub min_abs: f64,
    pub equilibrium: MetricState,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub points: Vec<ScanPoint>,
    /// Index of the first point where continuation failed.
    pub failed_at: Option<usize>,
    /// Path coordinates of the exact crossings of `Q = 0`.
    pub crossings: Vec<f64>,
    /// Index of the smallest `min_abs` among `points`.
    pub dip_index: Option<usize>,
    /// Refined minimum between the neighbours of the dip.
    pub refined_dip: Option<ScanPoint>,
}

fn lerp(s: &[f64; 3], e: &[f64; 3], u: f64) -> [f64; 3] {
    [s[0] + u * (e[0] - s[0]), s[1] + u * (e[1] - s[1]), s[2] + u * (e[2] - s[2])]
}

fn min_abs_at(a: &[f64; 3], guess: &MetricState) -> Result<(f64, MetricState)> {
    let p = WallachParams {
        a1: Rational::from_float(a[0]).ok_or_else(|| Error::Domain("non-finite parameter".into()))?,
        a2: Rational::from_float(a[1]).ok_or_else(|| Error::Domain("non-finite parameter".into()))?,
        a3: Rational::from_float(a[2]).ok_or_else(|| Error::Domain("non-finite parameter".into()))?,
    };
    let x = find_equilibrium(&p, guess)?;
    Ok((jacobian_spectrum(&p, &x)?.min_abs, x))
}

/// Exact crossings of `Q = 0` on the segment, as path coordinates in `[0, 1]`.
pub fn path_crossings(start: &WallachParams, end: &WallachParams) -> Result<Vec<f64>> {
    let (s, e) = (start.exact(), end.exact());
    let line = |i: usize| UniPoly::linear(s[i].clone(), &e[i] - &s[i]);
    let q = q_generic(&line(0), &line(1), &line(2));
    if q.is_zero() {
        return Err(Error::SegmentInsideOmega);
    }
    let eps = rat(1, 1 << 40);
    let lo = rat(-1, 1 << 30);
    isolate_roots(&q, &lo, &int(1))?.iter().map(|iv| refine_root(&q, iv, &eps).map(|r| to_f64(&r))).collect()
}

/// Continues equilibria along the straight path from `start` to `end`
/// (`steps` points) starting from `guess`, records the transverse `min_abs`
/// and refines the dip by golden-section search between its neighbours.
pub fn degeneracy_scan(
    start: &WallachParams,
    end: &WallachParams,
    steps: usize,
    guess: &MetricState,
) -> Result<ScanResult> {
    let path = parameter_path(start, end, steps);
    let last = (path.len() - 1) as f64;
    let mut points = Vec::with_capacity(path.len());
    let mut failed_at = None;
    let mut g = *guess;
    for (k, p) in path.iter().enumerate() {
        match find_equilibrium(p, &g).and_then(|x| Ok((jacobian_spectrum(p, &x)?.min_abs, x))) {
            Ok((m, x)) => {
                points.push(ScanPoint { param: p.to_f64(), s: k as f64 / last, min_abs: m, equilibrium: x });
                g = x;
            }
            Err(_) => {
                failed_at = Some(k);
                break;
            }
        }
    }
    let crossings = path_crossings(start, end)?;
    let dip_index = (0..points.len()).min_by(|&i, &j| points[i].min_abs.total_cmp(&points[j].min_abs));
    let refined_dip = match dip_index {
        Some(k) if failed_at.is_none() => refine_dip(start, end, &points, k),
        _ => None,
    };
    Ok(ScanResult { points, failed_at, crossings, dip_index, refined_dip })
}

fn refine_dip(start: &WallachParams, end: &WallachParams, points: &[ScanPoint], k: usize) -> Option<ScanPoint> {
    let (sf, ef) = (start.to_f64(), end.to_f64());
    let lo_i = k.saturating_sub(1);
    let hi_i = (k + 1).min(points.len() - 1);
    let (mut lo, mut hi) = (points[lo_i].s, points[hi_i].s);
    let guess = points[k].equilibrium;
    let eval = |u: f64| min_abs_at(&lerp(&sf, &ef, u), &guess).ok();
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let (mut fc, mut fd) = (eval(c)?.0, eval(d)?.0);
    for _ in 0..60 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = eval(c)?.0;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = eval(d)?.0;
        }
    }
    let u = (lo + hi) / 2.0;
    let (m, x) = eval(u)?;
    let best = points[k].min_abs.min(m);
    if best < m {
        return Some(points[k].clone());
    }
    Some(ScanPoint { param: lerp(&sf, &ef, u), s: u, min_abs: m, equilibrium: x })
}

/// Runs independent scans concurrently.
pub fn scan_many(jobs: &[(WallachParams, WallachParams, usize, MetricState)]) -> Vec<Result<ScanResult>> {
    jobs.par_iter().map(|(s, e, n, g)| degeneracy_scan(s, e, *n, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(a: Rational) -> WallachParams {
        WallachParams::symmetric(a).unwrap()
    }

    #[test]
    fn symmetric_unit_state_is_equilibrium() {
        for (n, d) in [(1, 6), (1, 4), (1, 2), (7, 15)] {
            let f = vector_field_exact(&sym(rat(n, d)), &[int(1), int(1), int(1)]).unwrap();
            assert!(f.iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn asymmetric_field_is_nonzero() {
        let p = WallachParams::new(rat(1, 6), rat(1, 4), rat(1, 3)).unwrap();
        let f = vector_field_exact(&p, &[int(1), int(1), int(1)]).unwrap();
        assert!(f.iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn rejects_nonpositive_state() {
        assert!(vector_field(&sym(rat(1, 4)), &[1.0, 0.0, 1.0]).is_err());
        assert!(integrate(&sym(rat(1, 4)), &[1.0, 1.0, 1.0], 0.0, 1, 0.0).is_err());
    }

    #[test]
    fn volume_is_conserved_exactly() {
        let p = WallachParams::new(rat(1, 7), rat(2, 5), rat(1, 3)).unwrap();
        let x = [rat(3, 2), rat(5, 7), rat(11, 10)];
        assert!(volume_drift_exact(&p, &x).unwrap().is_zero());
    }

    #[test]
    fn zero_matrix_spectrum() {
        let eig = matrix_spectrum(&[[0.0; 3]; 3]);
        assert!(eig.iter().all(|z| z.norm() == 0.0));
        assert_eq!(spectrum_of(&[[0.0; 3]; 3]).min_abs, 0.0);
    }

    #[test]
    fn cubic_roots_of_known_polynomials() {
        // (l - 1)(l - 2)(l - 3)
        let mut r: Vec<f64> = cubic_roots(-6.0, 11.0, -6.0).iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (got, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        // l (l^2 + 1)
        let r = cubic_roots(0.0, 1.0, 0.0);
        assert!(r.iter().any(|z| z.norm() < 1e-12));
        assert!(r.iter().any(|z| (z.im - 1.0).abs() < 1e-12));
    }

    #[test]
    fn umbilic_parameters_are_degenerate() {
        let s = jacobian_spectrum(&sym(rat(1, 4)), &[1.0, 1.0, 1.0]).unwrap();
        assert!(s.min_abs < 1e-5, "{}", s.min_abs);
        let s = jacobian_spectrum(&sym(rat(1, 6)), &[1.0, 1.0, 1.0]).unwrap();
        assert!((s.min_abs - 1.0 / 3.0).abs() < 1e-6, "{}", s.min_abs);
        assert!(s.min_abs_full < 1e-6);
    }

    #[test]
    fn equilibrium_converges_immediately() {
        let rec = integrate(&sym(rat(1, 6)), &[1.0, 1.0, 1.0], 0.01, 100, 1e-12).unwrap();
        assert_eq!(rec.terminated_reason, Termination::Converged);
        assert_eq!(rec.states.len(), 1);
    }

    #[test]
    fn newton_finds_symmetric_equilibrium() {
        let x = find_equilibrium(&sym(rat(1, 4)), &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(x, [1.0, 1.0, 1.0]);
        let x = find_equilibrium(&sym(rat(1, 6)), &[1.2, 0.8, 1.0]).unwrap();
        assert!(norm(&vector_field(&sym(rat(1, 6)), &x).unwrap()) < NEWTON_TOLERANCE);
    }

    #[test]
    fn path_endpoints_are_exact() {
        let path = parameter_path(&sym(rat(1, 6)), &sym(rat(7, 15)), 61);
        assert_eq!(path.len(), 61);
        assert_eq!(path[0], sym(rat(1, 6)));
        assert_eq!(path[60], sym(rat(7, 15)));
        assert_eq!(path[1].a1, rat(1, 6) + rat(1, 200));
    }

    #[test]
    fn diagonal_crossing_is_the_umbilic() {
        let c = path_crossings(&sym(rat(1, 6)), &sym(rat(7, 15))).unwrap();
        assert_eq!(c.len(), 1);
        let a = 1.0 / 6.0 + c[0] * (7.0 / 15.0 - 1.0 / 6.0);
        assert!((a - 0.25).abs() < 1e-6);
    }
}
