//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Runs with `harness = false` so the lines reach stdout under `cargo test`.

use std::time::Instant;

use num_traits::Zero;
use omega_core::census::{cube_census, is_rotation_equivariant, reference_labels, ComponentLabeling, GridSpec};
use omega_core::flow::{degeneracy_scan, integrate, WallachParams};
use omega_core::poly::UniPoly;
use omega_core::rational::{parse_rational, rat, Rational};
use omega_core::roots::isolate_roots;
use omega_core::sampling::{ablated_components, omega_connectivity, sample_omega, ABLATION_RADIUS};
use omega_core::surface::{build_p, count_unit_roots, q_generic, RayParams};
use omega_core::verify::{
    corner_inconclusive_check, corner_multiplicity_check, discriminant_sample_check, edge_threshold_check,
    f_certificate_check, flow_equivariance_check, p1_identity_check, reference_counts_check, refined_unit_roots,
    symmetric_equilibrium_check, Check, Verdict, DEFAULT_SEED,
};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn passed(checks: &[Check]) -> Outcome {
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| c.verdict != Verdict::Pass)
        .map(|c| format!("{} [{}] {}", c.name, c.verdict, c.detail))
        .collect();
    if bad.is_empty() {
        Ok(checks.iter().map(|c| c.name.clone()).collect::<Vec<_>>().join("; "))
    } else {
        Err(bad.join("; "))
    }
}

fn fixture(name: &str) -> Value {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).expect("fixture exists")).expect("fixture parses")
}

fn fixture_product(entry: &Value) -> UniPoly {
    let mut out = UniPoly::constant(parse_rational(entry["scale"].as_str().unwrap()).unwrap());
    for f in entry["factors"].as_array().unwrap() {
        let coeffs: Vec<Rational> =
            f["poly"].as_array().unwrap().iter().map(|c| parse_rational(c.as_str().unwrap()).unwrap()).collect();
        let factor = UniPoly::new(coeffs);
        for _ in 0..f["power"].as_u64().unwrap() {
            out = &out * &factor;
        }
    }
    out
}

fn criterion_1() -> Outcome {
    passed(&[p1_identity_check(DEFAULT_SEED, 200)])
}

fn criterion_2() -> Outcome {
    let fx = fixture("ray_factors.json");
    let mut notes = Vec::new();
    for key in ["k1_representative", "k2_representative", "corner"] {
        let e = &fx[key];
        let a = parse_rational(e["a"].as_str().unwrap()).unwrap();
        let b = parse_rational(e["b"].as_str().unwrap()).unwrap();
        let p = build_p(&RayParams::new(a, b).unwrap());
        if p != fixture_product(e) {
            return Err(format!("{key}: build_p differs from the factored product"));
        }
        notes.push(format!("{key} exact"));
    }
    Ok(notes.join(", "))
}

fn criterion_3() -> Outcome {
    let mut checks = vec![reference_counts_check(), edge_threshold_check(DEFAULT_SEED), corner_multiplicity_check()];
    // Convergents of sqrt(2)/4 from below and above.
    for (a, want) in [(rat(1393, 3940), 1), (rat(3363, 9512), 2)] {
        let got = count_unit_roots(&RayParams::new(a.clone(), rat(1, 2)).unwrap()).count;
        checks.push(Check {
            name: format!("edge count at a = {a} is {want}"),
            verdict: Verdict::from_bool(got == want),
            detail: serde_json::json!({ "count": got }),
        });
    }
    passed(&checks)
}

fn criterion_4() -> Outcome {
    let fx = fixture("ray_factors.json");
    let tol = rat(1, 1 << 40);
    let mut worst: f64 = 0.0;
    for (key, a) in [("k1_representative", rat(3, 10)), ("k2_representative", rat(31, 100))] {
        let printed: Vec<f64> = fx[key]["printed_roots"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().parse::<f64>().unwrap())
            .filter(|&r| r > 0.0 && r <= 1.0)
            .collect();
        let got = refined_unit_roots(&a, &tol);
        if got.len() != printed.len() {
            return Err(format!("{key}: {} roots, expected {}", got.len(), printed.len()));
        }
        for (g, p) in got.iter().zip(&printed) {
            worst = worst.max((g - p).abs());
        }
    }
    if worst <= 1e-9 {
        Ok(format!("max deviation {worst:.3e}"))
    } else {
        Err(format!("max deviation {worst:.3e} > 1e-9"))
    }
}

fn criterion_5() -> Outcome {
    passed(&[discriminant_sample_check(DEFAULT_SEED)])
}

fn criterion_6() -> Outcome {
    passed(&[f_certificate_check(&rat(1, 1000), 30), corner_inconclusive_check(30)])
}

fn census_summary(lab: &ComponentLabeling) -> Result<Vec<u32>, String> {
    let ids: Vec<u32> = reference_labels(lab)
        .into_iter()
        .map(|(name, l)| l.map_err(|e| format!("{name}: {e}")))
        .collect::<Result<_, _>>()?;
    let distinct = ids[0] != ids[1] && ids[1] != ids[2] && ids[0] != ids[2];
    if lab.component_count != 3 || !distinct || !is_rotation_equivariant(lab) {
        return Err(format!("n = {}: {} components, reference labels {ids:?}", lab.grid.n, lab.component_count));
    }
    Ok(ids)
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for n in [24, 48] {
        let t = Instant::now();
        let lab = cube_census(&GridSpec::new(n).unwrap());
        let ids = census_summary(&lab)?;
        notes.push(format!("n = {n}: 3 components, references {ids:?} ({:.0?})", t.elapsed()));
    }
    Ok(notes.join("; "))
}

fn criterion_8() -> Outcome {
    let gr = sample_omega(32).map_err(|e| e.to_string())?;
    let conn = omega_connectivity(&gr);
    let ablated = ablated_components(&gr, &rat(ABLATION_RADIUS.0, ABLATION_RADIUS.1));
    let msg = format!("{} samples, {} component(s), {ablated} after ablation", gr.vertices.len(), conn.components);
    if conn.components == 1 && ablated == 2 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn rk4_order() -> f64 {
    let p = WallachParams::new(rat(1, 6), rat(1, 4), rat(1, 3)).unwrap();
    let x0 = [1.1, 0.9, 1.0];
    let run = |dt: f64| *integrate(&p, &x0, dt, (1.0 / dt).round() as usize, 0.0).unwrap().last();
    let (a, b, c) = (run(0.1), run(0.05), run(0.025));
    let d = |u: [f64; 3], v: [f64; 3]| (0..3).map(|i| (u[i] - v[i]).powi(2)).sum::<f64>().sqrt();
    (d(a, b) / d(b, c)).log2()
}

fn criterion_9() -> Outcome {
    let order = rk4_order();
    let mut checks = vec![symmetric_equilibrium_check(DEFAULT_SEED, 50), flow_equivariance_check(DEFAULT_SEED, 100)];
    checks.push(Check {
        name: format!("RK4 observed order {order:.3}"),
        verdict: Verdict::from_bool((3.7..=4.3).contains(&order)),
        detail: Value::Null,
    });
    passed(&checks)
}

fn criterion_10() -> Outcome {
    let (s, e) = (rat(1, 6), rat(7, 15));
    // Exact crossing: Q on the path a(u) = s + u (e - s).
    let a = UniPoly::linear(s.clone(), &e - &s);
    let q = q_generic(&a, &a, &a);
    let roots = isolate_roots(&q, &rat(0, 1), &rat(1, 1)).map_err(|e| e.to_string())?;
    let u_star = rat(5, 18);
    if roots.len() != 1 || !(roots[0].lo <= u_star && u_star <= roots[0].hi) || !q.eval(&u_star).is_zero() {
        return Err(format!("expected a single crossing at a = 1/4, got {roots:?}"));
    }
    let steps = 61;
    let (ps, pe) = (WallachParams::symmetric(s).unwrap(), WallachParams::symmetric(e).unwrap());
    let r = degeneracy_scan(&ps, &pe, steps, &[1.0, 1.0, 1.0]).map_err(|e| e.to_string())?;
    if let Some(k) = r.failed_at {
        return Err(format!("continuation failed at step {k}"));
    }
    let step = 1.0 / (steps - 1) as f64;
    let u = 5.0 / 18.0;
    let nearest = (u / step).round() as usize;
    let k = r.dip_index.ok_or("no dip")?;
    let dip = r.refined_dip.as_ref().ok_or("no refined dip")?;
    let ends = (r.points[0].min_abs, r.points[steps - 1].min_abs);
    let ok = k == nearest && dip.min_abs < 1e-3 && (dip.s - u).abs() <= step && ends.0 > 1e-2 && ends.1 > 1e-2;
    let msg = format!(
        "dip at step {k} (nearest to crossing: {nearest}), min_abs {:.3e} at a = {:.9}, endpoints {:.4} / {:.4}",
        dip.min_abs, dip.param[0], ends.0, ends.1
    );
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exact p(1) identity on 200 seeded rays", criterion_1),
        ("factored ray polynomials match exactly", criterion_2),
        ("unit root counts and edge threshold", criterion_3),
        ("refined roots match printed decimals within 1e-9", criterion_4),
        ("discriminant locus on 150 seeded rays", criterion_5),
        ("F positivity certificate and corner inconclusive", criterion_6),
        ("cube census: 3 components at n = 24 and n = 48", criterion_7),
        ("surface sample graph connected, splits in 2 without the umbilic", criterion_8),
        ("flow identities and RK4 order", criterion_9),
        ("diagonal degeneracy scan", criterion_10),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS ({secs:.1}s) {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("criterion {id:>2} FAIL ({secs:.1}s) {name}: {detail}");
            }
        }
    }
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
}
