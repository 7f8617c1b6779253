use criterion::{black_box, criterion_group, criterion_main, Criterion};
use omega_core::flow::{degeneracy_scan, find_equilibrium, integrate, jacobian_spectrum, vector_field, WallachParams};
use omega_core::rat;

fn flow(c: &mut Criterion) {
    let p = WallachParams::new(rat(1, 6), rat(1, 4), rat(1, 3)).unwrap();
    let x = [1.1, 0.9, 1.0];
    c.bench_function("vector_field", |b| b.iter(|| vector_field(black_box(&p), black_box(&x)).unwrap()));
    c.bench_function("rk4_1000_steps", |b| b.iter(|| integrate(&p, &x, 1e-3, 1000, 0.0).unwrap()));
    c.bench_function("find_equilibrium", |b| b.iter(|| find_equilibrium(&p, &[1.0, 1.0, 1.0]).unwrap()));
    c.bench_function("jacobian_spectrum", |b| b.iter(|| jacobian_spectrum(&p, &x).unwrap()));
    let (s, e) = (WallachParams::symmetric(rat(1, 6)).unwrap(), WallachParams::symmetric(rat(7, 15)).unwrap());
    c.bench_function("diagonal_scan_61", |b| b.iter(|| degeneracy_scan(&s, &e, 61, &[1.0, 1.0, 1.0]).unwrap()));
}

criterion_group!(benches, flow);
criterion_main!(benches);
