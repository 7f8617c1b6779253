//! One function per subcommand. Each returns an [`Outcome`] whose verdict
//! drives the exit code.

use std::fmt::Write as _;

use omega_core::census::{is_rotation_equivariant, locate_component, reference_labels, ComponentLabeling, GridSpec};
use omega_core::flow::{degeneracy_scan, integrate, jacobian_spectrum, MetricState, ScanResult, WallachParams};
use omega_core::rational::{parse_rational, to_exact_string, to_f64, Rational};
use omega_core::sampling::{ablated_components, omega_connectivity, sample_omega, umbilic, ABLATION_RADIUS};
use omega_core::surface::{eval_q, CubePoint};
use omega_core::verify::{run_suite, Suite, Verdict};
use omega_core::{rat, Error};
use serde_json::{json, Value};

use crate::cache::CensusCache;
use crate::report::{to_json, CliError, Outcome, RunReport};
use crate::{GlobalOpts, PathKind};

pub const DEFAULT_CENSUS_N: usize = 24;
pub const DEFAULT_SAMPLE_M: usize = 32;
pub const DEFAULT_DIP_THRESHOLD: f64 = 1e-3;
pub const DEFAULT_CONVERGENCE_TOL: f64 = 1e-12;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s.trim()).map_err(usage)
}

fn rationals<const N: usize>(items: &[impl AsRef<str>]) -> Result<[Rational; N], CliError> {
    if items.len() != N {
        return Err(usage(format!("expected {N} values, got {}", items.len())));
    }
    let v: Vec<Rational> = items.iter().map(|s| rational(s.as_ref())).collect::<Result<_, _>>()?;
    Ok(v.try_into().expect("length checked"))
}

fn positive_state(x: &[Rational; 3]) -> Result<MetricState, CliError> {
    if x.iter().any(|v| *v <= Rational::from_integer(0.into())) {
        return Err(usage("state components must be positive"));
    }
    Ok(x.clone().map(|v| to_f64(&v)))
}

fn report(command: &str, inputs: Value, verdict: Verdict, details: Value) -> RunReport {
    RunReport { command: command.to_string(), inputs, verdict, details }
}

pub fn verify(g: &GlobalOpts, suite: Suite) -> Result<Outcome, CliError> {
    let r = run_suite(suite, g.seed);
    let mut csv = String::from("check,verdict\n");
    for c in &r.checks {
        writeln!(csv, "\"{}\",{}", c.name.replace('"', "'"), c.verdict).unwrap();
    }
    let report =
        report("verify", json!({ "suite": suite.name(), "seed": g.seed }), r.verdict, json!({ "checks": r.checks }));
    Ok(Outcome { report, csv, artifacts: Vec::new() })
}

fn census_grid(g: &GlobalOpts, n: Option<usize>) -> Result<GridSpec, CliError> {
    GridSpec::new(n.or(g.resolution).unwrap_or(DEFAULT_CENSUS_N)).map_err(usage)
}

/// Reference names `O1, O2, O3` for the component ids they occupy.
fn reference_names(lab: &ComponentLabeling) -> Vec<(&'static str, Option<u32>)> {
    reference_labels(lab).into_iter().map(|(name, l)| (name, l.ok())).collect()
}

fn component_name(lab: &ComponentLabeling, id: u32) -> String {
    reference_names(lab)
        .into_iter()
        .find(|(_, l)| *l == Some(id))
        .map(|(name, _)| name.to_string())
        .unwrap_or_else(|| format!("component-{id}"))
}

pub fn classify(g: &GlobalOpts, coords: [&String; 3]) -> Result<Outcome, CliError> {
    let [a1, a2, a3] = rationals::<3>(&coords)?;
    let p = CubePoint::new_interior(a1, a2, a3).map_err(usage)?;
    let exact: Vec<String> = p.coords().iter().map(|c| to_exact_string(c)).collect();
    let q = eval_q(&p);
    let q_sign = omega_core::rational::sign(&q);
    let inputs = json!({ "point": exact });
    let row =
        |label: &str| format!("a1,a2,a3,q_sign,component\n{},{},{},{q_sign},{label}\n", exact[0], exact[1], exact[2]);
    if q_sign == 0 {
        let details = json!({ "q_sign": 0, "on_omega": true, "detail": "on surface" });
        return Ok(Outcome {
            report: report("classify", inputs, Verdict::Inconclusive, details),
            csv: row("on-surface"),
            artifacts: Vec::new(),
        });
    }
    let grid = census_grid(g, None)?;
    let cache = CensusCache::new(g.cache.as_deref());
    let lab = cache.get_or_build(&grid)?;
    let (verdict, component, detail) = match locate_component(&p, &lab) {
        Ok(id) => (Verdict::Pass, Some(component_name(&lab, id)), None),
        Err(Error::Unresolved) => (Verdict::Inconclusive, None, Some("unresolved at this resolution")),
        Err(e) => return Err(CliError::Runtime(e.to_string())),
    };
    let details = json!({
        "q_sign": q_sign,
        "on_omega": false,
        "component": component,
        "resolution": grid.n,
        "detail": detail,
    });
    let label = component.clone().unwrap_or_else(|| "unresolved".into());
    Ok(Outcome { report: report("classify", inputs, verdict, details), csv: row(&label), artifacts: Vec::new() })
}

pub fn census(g: &GlobalOpts, n: Option<usize>) -> Result<Outcome, CliError> {
    let grid = census_grid(g, n)?;
    let cache = CensusCache::new(g.cache.as_deref());
    let lab = cache.get_or_build(&grid)?;
    let refs = reference_names(&lab);
    let ids: Vec<Option<u32>> = refs.iter().map(|(_, l)| *l).collect();
    let distinct = ids.iter().all(Option::is_some) && ids[0] != ids[1] && ids[1] != ids[2] && ids[0] != ids[2];
    let verdict = if !distinct && ids.iter().all(Option::is_some) {
        Verdict::Fail
    } else if lab.component_count == 3 && distinct {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    let details = json!({
        "component_count": lab.component_count,
        "component_sizes": lab.component_sizes,
        "references": refs.iter().map(|(name, l)| (name.to_string(), json!(l))).collect::<serde_json::Map<_, _>>(),
        "references_distinct": distinct,
        "rotation_equivariant": is_rotation_equivariant(&lab),
        "bridges": lab.bridges.len(),
    });
    let mut csv = String::from("i,j,k,a1,a2,a3,label\n");
    for idx in 0..grid.node_count() {
        let (i, j, k) = grid.unindex(idx);
        let (c, l) = (grid.point(idx), lab.labels[idx]);
        let label = l.map(|v| v.to_string()).unwrap_or_default();
        let cs = c.coords();
        writeln!(
            csv,
            "{i},{j},{k},{},{},{},{label}",
            to_exact_string(cs[0]),
            to_exact_string(cs[1]),
            to_exact_string(cs[2])
        )
        .unwrap();
    }
    let artifacts = vec![("census_labeling.json".to_string(), to_json(&lab))];
    Ok(Outcome { report: report("census", json!({ "n": grid.n }), verdict, details), csv, artifacts })
}

pub fn omega_graph(g: &GlobalOpts, m: Option<usize>) -> Result<Outcome, CliError> {
    let m = m.or(g.resolution).unwrap_or(DEFAULT_SAMPLE_M);
    let gr = sample_omega(m).map_err(usage)?;
    let conn = omega_connectivity(&gr);
    let radius = rat(ABLATION_RADIUS.0, ABLATION_RADIUS.1);
    let ablated = ablated_components(&gr, &radius);
    let verdict = if conn.components == 1 && ablated == 2 { Verdict::Pass } else { Verdict::Inconclusive };
    let witness: Option<Vec<Vec<String>>> = conn.bridge_witness.as_ref().map(|path| {
        path.iter().map(|&v| gr.vertices[v].point.coords().iter().map(|c| to_exact_string(c)).collect()).collect()
    });
    let details = json!({
        "vertices": gr.vertices.len(),
        "edges": gr.edges.len(),
        "h": to_exact_string(&gr.h),
        "components": conn.components,
        "component_sizes": conn.component_sizes,
        "ablation_center": umbilic().coords().iter().map(|c| to_exact_string(c)).collect::<Vec<_>>(),
        "ablation_radius": to_exact_string(&radius),
        "ablated_components": ablated,
        "witness": witness,
        "witness_umbilic_distance": conn.witness_umbilic_distance,
    });
    let mut buf = Vec::new();
    gr.write_csv(&mut buf)?;
    let csv = String::from_utf8(buf).expect("ascii csv");
    Ok(Outcome { report: report("omega-graph", json!({ "m": m }), verdict, details), csv, artifacts: Vec::new() })
}

pub fn simulate(g: &GlobalOpts, params: &[String], x0: &[String], dt: f64, steps: usize) -> Result<Outcome, CliError> {
    let [a1, a2, a3] = rationals::<3>(params)?;
    let p = WallachParams::new(a1, a2, a3).map_err(usage)?;
    let x = positive_state(&rationals::<3>(x0)?)?;
    if dt.is_nan() || dt <= 0.0 {
        return Err(usage("dt must be positive"));
    }
    let tol = g.tolerance.unwrap_or(DEFAULT_CONVERGENCE_TOL);
    let rec = integrate(&p, &x, dt, steps, tol).map_err(usage)?;
    let last = *rec.last();
    let spectrum = jacobian_spectrum(&p, &last).ok();
    let details = json!({
        "terminated_reason": rec.terminated_reason,
        "points": rec.states.len(),
        "final_time": rec.times.last(),
        "final_state": last,
        "final_spectrum": spectrum,
    });
    let inputs = json!({
        "params": p.exact().iter().map(to_exact_string).collect::<Vec<_>>(),
        "x0": x0,
        "dt": dt,
        "steps": steps,
        "tolerance": tol,
    });
    let mut buf = Vec::new();
    rec.write_csv(&mut buf)?;
    let csv = String::from_utf8(buf).expect("ascii csv");
    Ok(Outcome { report: report("simulate", inputs, Verdict::Pass, details), csv, artifacts: Vec::new() })
}

fn parse_path(kind: PathKind, range: &str) -> Result<(WallachParams, WallachParams), CliError> {
    let (lo, hi) = range.split_once("..").ok_or_else(|| usage(format!("path range {range:?} lacks '..'")))?;
    let point = |s: &str| -> Result<WallachParams, CliError> {
        match kind {
            PathKind::Diagonal => WallachParams::symmetric(rational(s)?).map_err(usage),
            PathKind::Segment => {
                let parts: Vec<&str> = s.split(',').collect();
                let [a1, a2, a3] = rationals::<3>(&parts)?;
                WallachParams::new(a1, a2, a3).map_err(usage)
            }
        }
    };
    let (s, e) = (point(lo)?, point(hi)?);
    if s == e {
        return Err(usage("path endpoints coincide"));
    }
    Ok((s, e))
}

/// Pass when the dip sits within one step of a crossing and falls below the
/// threshold, or when a crossing-free path stays above it.
fn scan_verdict(r: &ScanResult, steps: usize, threshold: f64) -> Verdict {
    if r.failed_at.is_some() {
        return Verdict::Inconclusive;
    }
    let Some(k) = r.dip_index else {
        return Verdict::Inconclusive;
    };
    if r.crossings.is_empty() {
        let min = r.points.iter().map(|p| p.min_abs).fold(f64::INFINITY, f64::min);
        return Verdict::from_bool(min > threshold);
    }
    let step = 1.0 / (steps.max(2) - 1) as f64;
    let near = r.crossings.iter().any(|c| (r.points[k].s - c).abs() <= step);
    let deep = r.refined_dip.as_ref().is_some_and(|d| d.min_abs < threshold);
    Verdict::from_bool(near && deep)
}

pub fn scan(g: &GlobalOpts, kind: PathKind, range: &str, steps: usize, guess: &[String]) -> Result<Outcome, CliError> {
    if steps < 2 {
        return Err(usage("a scan needs at least 2 steps"));
    }
    let (s, e) = parse_path(kind, range)?;
    let x = positive_state(&rationals::<3>(guess)?)?;
    let threshold = g.tolerance.unwrap_or(DEFAULT_DIP_THRESHOLD);
    let r = degeneracy_scan(&s, &e, steps, &x).map_err(|e| CliError::Runtime(e.to_string()))?;
    let verdict = scan_verdict(&r, steps, threshold);
    let (sf, ef) = (s.to_f64(), e.to_f64());
    let crossing_params: Vec<[f64; 3]> =
        r.crossings.iter().map(|&u| [0, 1, 2].map(|i| sf[i] + u * (ef[i] - sf[i]))).collect();
    let details = json!({
        "crossings": r.crossings,
        "crossing_params": crossing_params,
        "dip_index": r.dip_index,
        "dip": r.dip_index.map(|k| &r.points[k]),
        "refined_dip": r.refined_dip,
        "endpoint_min_abs": [r.points.first().map(|p| p.min_abs), r.points.last().map(|p| p.min_abs)],
        "failed_at": r.failed_at,
        "threshold": threshold,
    });
    let inputs = json!({
        "from": s.exact().iter().map(to_exact_string).collect::<Vec<_>>(),
        "to": e.exact().iter().map(to_exact_string).collect::<Vec<_>>(),
        "steps": steps,
        "guess": guess,
    });
    let mut csv = String::from("s,a1,a2,a3,min_abs,x1,x2,x3\n");
    for p in &r.points {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            p.s, p.param[0], p.param[1], p.param[2], p.min_abs, p.equilibrium[0], p.equilibrium[1], p.equilibrium[2]
        )
        .unwrap();
    }
    let artifacts = vec![("scan_points.json".to_string(), to_json(&r.points))];
    Ok(Outcome { report: report("scan", inputs, verdict, details), csv, artifacts })
}
