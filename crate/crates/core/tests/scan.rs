use omega_core::flow::{degeneracy_scan, WallachParams};
use omega_core::rational::rat;

fn sym(n: i64, d: i64) -> WallachParams {
    WallachParams::symmetric(rat(n, d)).unwrap()
}

#[test]
fn reversed_diagonal_scan_dips_at_the_same_parameter() {
    let (s, e) = (sym(1, 6), sym(7, 15));
    let fwd = degeneracy_scan(&s, &e, 61, &[1.0, 1.0, 1.0]).unwrap();
    let back = degeneracy_scan(&e, &s, 61, &[1.0, 1.0, 1.0]).unwrap();
    let (kf, kb) = (fwd.dip_index.unwrap(), back.dip_index.unwrap());
    assert_eq!(fwd.points[kf].param, back.points[kb].param);
    let (rf, rb) = (fwd.refined_dip.unwrap(), back.refined_dip.unwrap());
    assert!((rf.param[0] - rb.param[0]).abs() < 1e-8);
    assert!((rf.param[0] - 0.25).abs() < 1e-6);
}

#[test]
fn path_inside_first_component_stays_nondegenerate() {
    let s = sym(1, 6);
    let e = WallachParams::new(rat(1, 5), rat(1, 6), rat(1, 7)).unwrap();
    let r = degeneracy_scan(&s, &e, 21, &[1.0, 1.0, 1.0]).unwrap();
    assert!(r.crossings.is_empty());
    assert!(r.failed_at.is_none());
    let min = r.points.iter().map(|p| p.min_abs).fold(f64::INFINITY, f64::min);
    assert!(min > 1e-2, "{min}");
}

#[test]
fn equilibria_move_continuously_along_the_path() {
    let r = degeneracy_scan(&sym(1, 6), &sym(7, 15), 61, &[1.0, 1.0, 1.0]).unwrap();
    for w in r.points.windows(2) {
        let jump = (0..3).map(|i| (w[0].equilibrium[i] - w[1].equilibrium[i]).abs()).fold(0.0, f64::max);
        assert!(jump < 0.1, "jump {jump} at s = {}", w[1].s);
    }
}
