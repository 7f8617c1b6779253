//! Seeded verification suites over the exact surface, positivity and flow
//! routines. Each suite yields a list of named checks with a verdict.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::flow::{vector_field_exact, volume_drift_exact, WallachParams};
use crate::poly::{Ring, UniPoly};
use crate::positivity::{certify_f_nonvanishing, certify_positive, f_bipoly, CertOutcome, RatBox};
use crate::rational::{int, parse_rational, rat, to_exact_string, to_f64, Rational};
use crate::roots::refine_root;
use crate::surface::{
    build_p, count_unit_roots, cusp_minimal_polynomial, discriminant_locus_check, edge_expected_count, eval_f, eval_q,
    g_on_diagonal, verify_diagonal_factorization, verify_edge_factorization, verify_p1_identity, CubePoint,
    DiscriminantLocus, RayParams, RegionClassifier, RegionK,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: Value,
}

impl Check {
    fn new(name: &str, ok: bool, detail: Value) -> Self {
        Check { name: name.to_string(), verdict: Verdict::from_bool(ok), detail }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Discriminant locus of `p` and positivity of its cubic factor.
    Discriminant,
    /// Factorization of `p` on the diagonal `a = b`.
    Diagonal,
    /// Root counts and root values at the two reference rays.
    RootCounts,
    /// The edge `b = 1/2` and the corner.
    Edge,
    /// Exact polynomial and flow identities on random inputs.
    Identities,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::Discriminant, Suite::Diagonal, Suite::RootCounts, Suite::Edge, Suite::Identities];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Discriminant => "discriminant",
            Suite::Diagonal => "diagonal",
            Suite::RootCounts => "root-counts",
            Suite::Edge => "edge",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        std::iter::once(Suite::All)
            .chain(Suite::ALL)
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

/// Random rational `num/den` in `(0, 1/2)` with `den <= 1000`.
pub fn random_half_open(rng: &mut impl Rng) -> Rational {
    let den: i64 = rng.gen_range(3..=1000);
    let num = rng.gen_range(1..=(den - 1) / 2);
    rat(num, den)
}

/// Random rational in `(0, 1/2]`.
pub fn random_half_closed(rng: &mut impl Rng) -> Rational {
    let den: i64 = rng.gen_range(2..=1000);
    let num = rng.gen_range(1..=den / 2);
    rat(num, den)
}

fn factored_product(scale: &str, factors: &[(&[i64], u32)]) -> UniPoly {
    let mut out = UniPoly::constant(parse_rational(scale).expect("literal"));
    for (coeffs, power) in factors {
        out = &out * &UniPoly::from_ints(coeffs).pow(*power);
    }
    out
}

/// `build_p(3/10, 3/10)` in factored form.
pub fn k1_reference_product() -> UniPoly {
    factored_product("-1/9765625", &[(&[1, 1], 1), (&[5, -16, 16], 1), (&[125, -275, 0, 144], 3)])
}

/// `build_p(31/100, 31/100)` in factored form.
pub fn k2_reference_product() -> UniPoly {
    factored_product("-1/6103515625000000", &[(&[1, 1], 1), (&[25, -81, 81], 1), (&[62500, -140000, 0, 77841], 3)])
}

/// `build_p(1/2, 1/2) = -(t+1)^4 (2t-1)^8`.
pub fn corner_product() -> UniPoly {
    factored_product("-1", &[(&[1, 1], 4), (&[-1, 2], 8)])
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let checks = match suite {
        Suite::All => Suite::ALL.iter().flat_map(|&s| run_suite(s, seed).checks).collect(),
        Suite::Discriminant => discriminant_checks(seed),
        Suite::Diagonal => diagonal_checks(seed),
        Suite::RootCounts => root_count_checks(),
        Suite::Edge => edge_checks(seed),
        Suite::Identities => identity_checks(seed),
    };
    let verdict = checks.iter().fold(Verdict::Pass, |v, c| v.and(c.verdict));
    SuiteReport { suite, seed, verdict, checks }
}

/// 50 diagonal rays with zero discriminant and 100 off-diagonal rays in `K`
/// with positive discriminant.
pub fn discriminant_sample_check(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..50 {
        let a = random_half_open(&mut rng);
        let r = RayParams::new(a.clone(), a).expect("in K");
        if discriminant_locus_check(&r) != DiscriminantLocus::ZeroOnDiagonal {
            violations.push(json!([to_exact_string(&r.a), to_exact_string(&r.b)]));
        }
    }
    let mut off = 0;
    while off < 100 {
        let (a, b) = (random_half_open(&mut rng), random_half_open(&mut rng));
        if a == b {
            continue;
        }
        off += 1;
        let r = RayParams::new(a, b).expect("in K");
        if discriminant_locus_check(&r) != DiscriminantLocus::PositiveOffDiagonal {
            violations.push(json!([to_exact_string(&r.a), to_exact_string(&r.b)]));
        }
    }
    Check::new(
        "discriminant zero on 50 diagonal rays, positive on 100 off-diagonal rays",
        violations.is_empty(),
        json!({ "diagonal": 50, "off_diagonal": 100, "violations": violations }),
    )
}

/// Subdivision certificate for `F > 0` on `[delta, 1/2 - delta]^2`.
pub fn f_certificate_check(delta: &Rational, depth: u32) -> Check {
    let name = format!("F > 0 on [{0}, 1/2 - {0}]^2", to_exact_string(delta));
    match certify_f_nonvanishing(delta, depth) {
        Ok(cert) => {
            let verdict = match cert.outcome {
                CertOutcome::Positive => Verdict::Pass,
                CertOutcome::Inconclusive => Verdict::Inconclusive,
                CertOutcome::Refuted => Verdict::Fail,
            };
            Check {
                name,
                verdict,
                detail: json!({
                    "outcome": cert.outcome,
                    "leaves": cert.leaves,
                    "deepest_level": cert.deepest_level,
                    "min_lower_bound": to_exact_string(&cert.min_lower_bound),
                }),
            }
        }
        Err(e) => Check { name, verdict: Verdict::Fail, detail: json!({ "error": e.to_string() }) },
    }
}

/// `F(1/2, 1/2) = 0`, so no certificate exists on a box touching the corner.
pub fn corner_inconclusive_check(depth: u32) -> Check {
    let zero = eval_f(&rat(1, 2), &rat(1, 2)).is_zero();
    let cert = certify_positive(&f_bipoly(), &RatBox::square(rat(1, 4), rat(1, 2)), depth);
    Check::new(
        "corner box is inconclusive and F(1/2, 1/2) = 0",
        zero && cert.outcome == CertOutcome::Inconclusive,
        json!({ "f_corner_zero": zero, "outcome": cert.outcome, "depth": depth }),
    )
}

fn discriminant_checks(seed: u64) -> Vec<Check> {
    vec![discriminant_sample_check(seed), f_certificate_check(&rat(1, 1000), 30), corner_inconclusive_check(12)]
}

/// Exact equality of `build_p` with the factored reference products.
pub fn factorization_fixture_check() -> Check {
    let cases = [("3/10", k1_reference_product()), ("31/100", k2_reference_product()), ("1/2", corner_product())];
    let mut detail = serde_json::Map::new();
    let mut ok = true;
    for (a, expected) in cases {
        let r = RayParams::new(parse_rational(a).unwrap(), parse_rational(a).unwrap()).unwrap();
        let same = build_p(&r) == expected;
        ok &= same;
        detail.insert(a.to_string(), json!(same));
    }
    Check::new("factored products at 3/10, 31/100, 1/2 match exactly", ok, Value::Object(detail))
}

fn diagonal_checks(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0002);
    let samples: Vec<Rational> = (0..50).map(|_| random_half_closed(&mut rng)).collect();
    let bad: Vec<String> = samples.iter().filter(|a| !verify_diagonal_factorization(a)).map(to_exact_string).collect();
    // D2 = 4(2a+1)(2a-1) < 0 and D3 = -32(2a+1)(2a-1)(22a^2+14a+1)a^2 > 0 on (0, 1/2).
    let signs_ok = samples.iter().filter(|a| **a < rat(1, 2)).all(|a| {
        let d2 = int(4) * (int(2) * a + int(1)) * (int(2) * a - int(1));
        let d3 =
            int(-32) * (int(2) * a + int(1)) * (int(2) * a - int(1)) * (int(22) * a * a + int(14) * a + int(1)) * a * a;
        d2 < Rational::zero() && d3 > Rational::zero()
    });
    vec![
        Check::new(
            "p = -(t+1) p2 p3^3 on 50 diagonal rays",
            bad.is_empty(),
            json!({ "samples": samples.len(), "failures": bad }),
        ),
        Check::new("D2 < 0 and D3 > 0 on the diagonal samples", signs_ok, json!({})),
        factorization_fixture_check(),
    ]
}

/// Printed decimal roots of the two reference rays.
pub const K1_ROOT: &str = "0.5345099430";
pub const K2_ROOTS: [&str; 2] = ["0.5285082631", "0.9963200660"];

/// Unit roots of `build_p` at `(a, a)`, refined to `tol`.
pub fn refined_unit_roots(a: &Rational, tol: &Rational) -> Vec<f64> {
    let r = RayParams::new(a.clone(), a.clone()).expect("valid ray");
    let p = build_p(&r);
    count_unit_roots(&r).roots.iter().map(|iv| to_f64(&refine_root(&p, iv, tol).expect("isolating interval"))).collect()
}

pub fn reference_root_values_check(tol: f64) -> Check {
    let t = rat(1, 1 << 40);
    let k1 = refined_unit_roots(&rat(3, 10), &t);
    let k2 = refined_unit_roots(&rat(31, 100), &t);
    let want1: Vec<f64> = vec![K1_ROOT.parse().unwrap()];
    let want2: Vec<f64> = K2_ROOTS.iter().map(|s| s.parse().unwrap()).collect();
    let close =
        |got: &[f64], want: &[f64]| got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= tol);
    Check::new(
        "refined roots match the reference decimals",
        close(&k1, &want1) && close(&k2, &want2),
        json!({ "k1": k1, "k2": k2, "tolerance": tol }),
    )
}

pub fn reference_counts_check() -> Check {
    let c1 = count_unit_roots(&RegionClassifier::k1_reference()).count;
    let c2 = count_unit_roots(&RegionClassifier::k2_reference()).count;
    Check::new(
        "one unit root at (3/10, 3/10), two at (31/100, 31/100)",
        c1 == 1 && c2 == 2,
        json!({ "k1": c1, "k2": c2 }),
    )
}

fn root_count_checks() -> Vec<Check> {
    let classifier = RegionClassifier::new();
    let regions_ok = classifier.as_ref().is_ok_and(|c| {
        c.classify(&RegionClassifier::k1_reference()) == RegionK::K1
            && c.classify(&RegionClassifier::k2_reference()) == RegionK::K2
    });
    // G(x, x) = 8x (4x^2 + 2x - 1)^3
    let cusp = &UniPoly::from_ints(&[0, 8]) * &cusp_minimal_polynomial().pow(3);
    vec![
        reference_counts_check(),
        reference_root_values_check(1e-9),
        Check::new("reference rays fall in opposite regions of K", regions_ok, json!({})),
        Check::new("G(x, x) = 8x (4x^2 + 2x - 1)^3", g_on_diagonal() == cusp, json!({})),
    ]
}

/// The unit root count on `b = 1/2` is 1 below `8a^2 = 1` and 2 from it up
/// to the corner, checked at the threshold neighbours and random samples.
pub fn edge_threshold_check(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0004);
    let mut samples: Vec<Rational> = (0..40).map(|_| random_half_open(&mut rng)).collect();
    // Rationals just below and above sqrt(2)/4 ~ 0.35355339.
    samples.extend([rat(35355, 100000), rat(35356, 100000), rat(1, 4), rat(49, 100)]);
    let mut bad = Vec::new();
    for a in &samples {
        let got = count_unit_roots(&RayParams::new(a.clone(), rat(1, 2)).unwrap()).count;
        if got != edge_expected_count(a) {
            bad.push(json!({ "a": to_exact_string(a), "count": got }));
        }
    }
    Check::new(
        "edge root count flips exactly at 8a^2 = 1",
        bad.is_empty(),
        json!({ "samples": samples.len(), "failures": bad }),
    )
}

pub fn corner_multiplicity_check() -> Check {
    let r = RayParams::new(rat(1, 2), rat(1, 2)).unwrap();
    let roots = count_unit_roots(&r).roots;
    let half = rat(1, 2);
    let ok = roots.len() == 1
        && roots[0].lo <= half
        && half <= roots[0].hi
        && build_p(&r).eval(&half).is_zero()
        && roots[0].multiplicity == 8;
    Check::new("corner ray has the single root t = 1/2 of multiplicity 8", ok, json!({ "roots": roots }))
}

fn edge_checks(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0003);
    let bad: Vec<String> = (0..50)
        .map(|_| random_half_closed(&mut rng))
        .filter(|a| !verify_edge_factorization(a))
        .map(|a| to_exact_string(&a))
        .collect();
    vec![
        Check::new("p = -(2at+1) p2 p3^3 on 50 edge rays", bad.is_empty(), json!({ "failures": bad })),
        edge_threshold_check(seed),
        corner_multiplicity_check(),
    ]
}

/// `p(1) = -4 (a+b)^2 G(a, b)` on `count` random rays.
pub fn p1_identity_check(seed: u64, count: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bad: Vec<Value> = (0..count)
        .map(|_| RayParams::new(random_half_closed(&mut rng), random_half_closed(&mut rng)).unwrap())
        .filter(|r| !verify_p1_identity(r))
        .map(|r| json!([to_exact_string(&r.a), to_exact_string(&r.b)]))
        .collect();
    Check::new(
        &format!("p(1) = -4(a+b)^2 G(a,b) on {count} random rays"),
        bad.is_empty(),
        json!({ "samples": count, "failures": bad }),
    )
}

/// The flow field vanishes at `x = (1,1,1)` for symmetric parameters.
pub fn symmetric_equilibrium_check(seed: u64, count: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0009);
    let one = [int(1), int(1), int(1)];
    let bad: Vec<String> = (0..count)
        .map(|_| random_half_closed(&mut rng))
        .filter(|a| {
            let f = vector_field_exact(&WallachParams::symmetric(a.clone()).unwrap(), &one).unwrap();
            !f.iter().all(Zero::is_zero)
        })
        .map(|a| to_exact_string(&a))
        .collect();
    Check::new(
        &format!("flow field vanishes at (1,1,1) for {count} symmetric parameters"),
        bad.is_empty(),
        json!({ "failures": bad }),
    )
}

fn random_state(rng: &mut impl Rng) -> [Rational; 3] {
    [0, 1, 2].map(|_| rat(rng.gen_range(1..=400), rng.gen_range(1..=200)))
}

/// Cyclic and transposing permutations of `(a, x)` permute the field
/// accordingly; the volume drift is zero.
pub fn flow_equivariance_check(seed: u64, count: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_000a);
    let perms: [[usize; 3]; 5] = [[1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
    let mut failures = 0;
    for _ in 0..count {
        let a = [0, 1, 2].map(|_| random_half_closed(&mut rng));
        let x = random_state(&mut rng);
        let p = WallachParams::new(a[0].clone(), a[1].clone(), a[2].clone()).unwrap();
        let f = vector_field_exact(&p, &x).unwrap();
        let drift_zero = volume_drift_exact(&p, &x).unwrap().is_zero();
        let perm_ok = perms.iter().all(|s| {
            let pa = WallachParams::new(a[s[0]].clone(), a[s[1]].clone(), a[s[2]].clone()).unwrap();
            let px = [x[s[0]].clone(), x[s[1]].clone(), x[s[2]].clone()];
            let pf = vector_field_exact(&pa, &px).unwrap();
            (0..3).all(|i| pf[i] == f[s[i]])
        });
        if !(drift_zero && perm_ok) {
            failures += 1;
        }
    }
    Check::new(
        &format!("flow field is permutation equivariant and volume preserving on {count} random inputs"),
        failures == 0,
        json!({ "samples": count, "failures": failures }),
    )
}

/// `Q` is invariant under all coordinate permutations.
pub fn q_symmetry_check(seed: u64, count: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_000b);
    let mut failures = 0;
    for _ in 0..count {
        let c = [0, 1, 2].map(|_| random_half_closed(&mut rng));
        let q = eval_q(&CubePoint::unchecked(c[0].clone(), c[1].clone(), c[2].clone()));
        let swapped = eval_q(&CubePoint::unchecked(c[1].clone(), c[0].clone(), c[2].clone()));
        let rotated = eval_q(&CubePoint::unchecked(c[2].clone(), c[0].clone(), c[1].clone()));
        if q != swapped || q != rotated {
            failures += 1;
        }
    }
    Check::new(&format!("Q is symmetric on {count} random points"), failures == 0, json!({ "failures": failures }))
}

fn identity_checks(seed: u64) -> Vec<Check> {
    let umbilic_zero = eval_q(&CubePoint::unchecked(rat(1, 4), rat(1, 4), rat(1, 4))).is_zero();
    vec![
        p1_identity_check(seed, 200),
        q_symmetry_check(seed, 100),
        Check::new("Q(1/4, 1/4, 1/4) = 0", umbilic_zero, json!({})),
        Check::new("F(1/2, 1/2) = 0", eval_f(&rat(1, 2), &rat(1, 2)).is_zero(), json!({})),
        symmetric_equilibrium_check(seed, 50),
        flow_equivariance_check(seed, 100),
    ]
}
