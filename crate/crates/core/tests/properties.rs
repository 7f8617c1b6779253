//! Randomized properties checked against independent oracles.

use num_traits::{One, Signed, Zero};
use omega_core::census::segment_root_count;
use omega_core::flow::{
    find_equilibrium, jacobian_central, jacobian_forward, vector_field, volume_drift_exact, WallachParams,
};
use omega_core::poly::UniPoly;
use omega_core::rational::{rat, Rational};
use omega_core::resultant::{discriminant, resultant};
use omega_core::roots::{isolate_roots, multiplicity_of_root, square_free_part, sturm_count, EndpointPolicy};
use omega_core::surface::{
    build_p, count_unit_roots, edge_expected_count, eval_q, verify_diagonal_factorization, verify_edge_factorization,
    verify_p1_identity, CubePoint, RayParams,
};
use proptest::prelude::*;

/// Rationals in `(0, 1/2)` with denominators up to 400.
fn open_half() -> impl Strategy<Value = Rational> {
    (3i64..400).prop_flat_map(|d| (1..=(d - 1) / 2).prop_map(move |n| rat(n, d)))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn small_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-9i64..=9, 2..6)
        .prop_map(|c| UniPoly::from_ints(&c))
        .prop_filter("degree at least 1", |p| p.degree() >= 1)
}

fn cube_point() -> impl Strategy<Value = CubePoint> {
    (open_half(), open_half(), open_half()).prop_map(|(a, b, c)| CubePoint::new(a, b, c).unwrap())
}

fn linear_root(r: &Rational) -> UniPoly {
    UniPoly::linear(-r.clone(), Rational::one())
}

/// Known roots with multiplicities, times an optional root-free quadratic.
fn with_known_roots() -> impl Strategy<Value = (UniPoly, Vec<(Rational, usize)>)> {
    (prop::collection::btree_map(-14i64..=14, 1usize..=3, 1..5), any::<bool>()).prop_map(|(roots, quad)| {
        let mut p = if quad { UniPoly::from_ints(&[1, 0, 1]) } else { UniPoly::from_ints(&[1]) };
        let mut distinct = Vec::new();
        for (k, mult) in roots {
            let r = rat(k, 7);
            for _ in 0..mult {
                p = &p * &linear_root(&r);
            }
            distinct.push((r, mult));
        }
        (p, distinct)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sturm_counts_known_roots((p, roots) in with_known_roots(), lo in small_rational(), w in 1i64..40) {
        let hi = &lo + rat(w, 7);
        let expected = roots.iter().filter(|(r, _)| *r > lo && *r <= hi).count();
        prop_assert_eq!(sturm_count(&p, &lo, &hi, EndpointPolicy::HalfOpenRightClosed).unwrap(), expected);
    }

    #[test]
    fn isolation_finds_each_known_root_with_its_multiplicity((p, roots) in with_known_roots()) {
        let ivs = isolate_roots(&p, &rat(-3, 1), &rat(3, 1)).unwrap();
        prop_assert_eq!(ivs.len(), roots.len());
        for (iv, (r, mult)) in ivs.iter().zip(&roots) {
            prop_assert!(iv.lo <= *r && *r <= iv.hi);
            prop_assert_eq!(multiplicity_of_root(&p, iv).unwrap(), *mult);
        }
    }

    #[test]
    fn square_free_part_has_simple_roots((p, roots) in with_known_roots()) {
        let sf = square_free_part(&p);
        prop_assert_eq!(sf.gcd(&sf.derivative()).degree(), 0);
        for (r, _) in &roots {
            prop_assert!(sf.eval(r).is_zero());
        }
    }

    #[test]
    fn resultant_is_antisymmetric(p in small_poly(), q in small_poly()) {
        let sign = if (p.degree() * q.degree()) % 2 == 1 { -Rational::one() } else { Rational::one() };
        prop_assert_eq!(resultant(&p, &q).unwrap(), sign * resultant(&q, &p).unwrap());
    }

    #[test]
    fn resultant_is_multiplicative(p in small_poly(), q in small_poly(), r in small_poly()) {
        let qr = &q * &r;
        prop_assert_eq!(resultant(&p, &qr).unwrap(), resultant(&p, &q).unwrap() * resultant(&p, &r).unwrap());
    }

    #[test]
    fn resultant_vanishes_on_common_root(r in small_rational(), p in small_poly(), q in small_poly()) {
        let l = linear_root(&r);
        prop_assert!(resultant(&(&p * &l), &(&q * &l)).unwrap().is_zero());
    }

    #[test]
    fn quadratic_discriminant(r in small_rational(), s in small_rational()) {
        let p = &linear_root(&r) * &linear_root(&s);
        let d = &r - &s;
        prop_assert_eq!(discriminant(&p).unwrap(), &d * &d);
    }

    #[test]
    fn surface_is_symmetric(p in cube_point()) {
        let q = eval_q(&p);
        prop_assert_eq!(eval_q(&p.rotate()), q.clone());
        let swapped = CubePoint::new(p.a2.clone(), p.a1.clone(), p.a3.clone()).unwrap();
        prop_assert_eq!(eval_q(&swapped), q);
    }

    #[test]
    fn ray_polynomial_is_symmetric_in_a_b(a in open_half(), b in open_half()) {
        let r = RayParams::new(a, b).unwrap();
        prop_assert_eq!(build_p(&r), build_p(&r.swapped()));
        prop_assert_eq!(build_p(&r).coeff(0), -Rational::one());
    }

    #[test]
    fn ray_polynomial_restricts_surface(a in open_half(), b in open_half(), t in 1i64..=20) {
        let r = RayParams::new(a, b).unwrap();
        let t = rat(t, 20);
        prop_assert_eq!(build_p(&r).eval(&t), eval_q(&r.point_at(&t)));
    }

    #[test]
    fn p1_identity_holds(a in open_half(), b in open_half()) {
        prop_assert!(verify_p1_identity(&RayParams::new(a, b).unwrap()));
    }

    #[test]
    fn diagonal_and_edge_factorizations(a in open_half()) {
        prop_assert!(verify_diagonal_factorization(&a));
        prop_assert!(verify_edge_factorization(&a));
    }

    #[test]
    fn edge_root_count_matches_threshold(a in open_half()) {
        let r = RayParams::new(a.clone(), rat(1, 2)).unwrap();
        prop_assert_eq!(count_unit_roots(&r).count, edge_expected_count(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn segment_count_is_direction_independent(p in cube_point(), q in cube_point()) {
        prop_assume!(p != q);
        let fwd = segment_root_count(&p, &q).unwrap();
        let back = segment_root_count(&q, &p).unwrap();
        prop_assert_eq!(fwd.count, back.count);
        prop_assert_eq!(fwd.start_on_omega, back.end_on_omega);
    }

    #[test]
    fn opposite_endpoint_signs_force_a_root(p in cube_point(), q in cube_point()) {
        prop_assume!(p != q);
        let (sp, sq) = (eval_q(&p), eval_q(&q));
        prop_assume!(!sp.is_zero() && !sq.is_zero());
        // The converse fails: a segment can cross twice between equal signs.
        let c = segment_root_count(&p, &q).unwrap().count;
        if sp.is_positive() != sq.is_positive() {
            prop_assert!(c >= 1);
        }
    }

    #[test]
    fn flow_preserves_log_volume(a in cube_point(), x in prop::array::uniform3(1i64..50)) {
        let p = WallachParams::from(&a);
        let x = x.map(|v| rat(v, 17));
        prop_assert!(volume_drift_exact(&p, &x).unwrap().is_zero());
    }

    #[test]
    fn finite_difference_jacobians_agree(a in cube_point(), x in prop::array::uniform3(0.5f64..2.0)) {
        let p = WallachParams::from(&a);
        let f = |y: &[f64; 3]| vector_field(&p, y).unwrap();
        let (jc, jf) = (jacobian_central(f, &x), jacobian_forward(f, &x));
        let scale = jc.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
        for (rc, rf) in jc.iter().zip(&jf) {
            for (c, f) in rc.iter().zip(rf) {
                prop_assert!((c - f).abs() <= 1e-4 * scale, "central {} forward {}", c, f);
            }
        }
    }

    #[test]
    fn rounded_equilibrium_is_nearly_exact(a in prop::array::uniform3(5i64..50)) {
        let p = WallachParams::new(rat(a[0], 100), rat(a[1], 100), rat(a[2], 100)).unwrap();
        let x = find_equilibrium(&p, &[1.0, 1.0, 1.0]);
        prop_assume!(x.is_ok());
        let x = x.unwrap();
        let scale = 1_000_000i64;
        let xr = x.map(|v| rat((v * scale as f64).round() as i64, scale));
        let f = omega_core::flow::vector_field_exact(&p, &xr).unwrap();
        let bound = rat(1, 10_000);
        for c in &f {
            prop_assert!(c.abs() <= bound, "residual {} at {:?}", c, x);
        }
    }
}

#[test]
fn double_crossing_segment_has_equal_endpoint_signs() {
    let p = CubePoint::new(rat(1, 20), rat(1, 20), rat(1, 20)).unwrap();
    let q = CubePoint::new(rat(3, 10), rat(3, 10), rat(7, 20)).unwrap();
    assert_eq!(segment_root_count(&p, &q).unwrap().count, 2);
    assert_eq!(eval_q(&p).signum(), eval_q(&q).signum());
}

#[test]
fn diagonal_segment_meets_surface_once_with_multiplicity_eight() {
    let p = CubePoint::new(rat(1, 6), rat(1, 6), rat(1, 6)).unwrap();
    let q = CubePoint::new(rat(7, 15), rat(7, 15), rat(7, 15)).unwrap();
    let seg = segment_root_count(&p, &q).unwrap();
    assert_eq!(seg.count, 1);
    let poly = omega_core::census::segment_polynomial(&p, &q);
    let ivs = isolate_roots(&poly, &Rational::zero(), &Rational::one()).unwrap();
    assert_eq!(ivs.len(), 1);
    assert_eq!(multiplicity_of_root(&poly, &ivs[0]).unwrap(), 8);
    assert!(poly.eval(&rat(5, 18)).is_zero());
    // Same point as (1/4, 1/4, 1/4).
    assert!(eval_q(&CubePoint::new(rat(1, 4), rat(1, 4), rat(1, 4)).unwrap()).is_zero());
}
