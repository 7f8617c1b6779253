//! Connectivity of the surface sample graph as the proximity radius varies.
//!
//! Usage: `cargo run --release --example radius_sweep -- M C1 C2 ...` with
//! radius `C/(4M)` for each `C`.

use omega_core::rational::rat;
use omega_core::sampling::{ablated_components, omega_connectivity, sample_omega_with_radius, ABLATION_RADIUS};

fn main() {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer argument")).collect();
    let Some((&m, radii)) = args.split_first() else {
        eprintln!("usage: radius_sweep M C1 [C2 ...]");
        std::process::exit(64);
    };
    for &c in radii {
        let gr = sample_omega_with_radius(m as usize, rat(c, 4 * m)).expect("m >= 8");
        let conn = omega_connectivity(&gr);
        let ablated = ablated_components(&gr, &rat(ABLATION_RADIUS.0, ABLATION_RADIUS.1));
        println!(
            "h = {c}/(4*{m}): {} samples, {} edges, {} component(s), {ablated} after ablation",
            gr.vertices.len(),
            gr.edges.len(),
            conn.components
        );
    }
}
