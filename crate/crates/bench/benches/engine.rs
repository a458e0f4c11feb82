use criterion::{black_box, criterion_group, criterion_main, Criterion};

use beurling::containment::{decide_blaschke, decide_derivative};
use beurling::families::{generate, FamilySpec};
use beurling::inner::{AtomicMeasure, BlaschkeProduct, InnerFunction, SelfMap};
use beurling::moebius::Moebius;
use beurling::oracle::{modulus_identity_check, sup_quotient, GridSpec};
use beurling::{c64, unit, Complex};

fn fixture_blaschke() -> BlaschkeProduct {
    BlaschkeProduct::new(
        unit(0.7),
        vec![
            (c64(0.3, 0.1), 3),
            (c64(-0.4, 0.2), 2),
            (c64(0.1, -0.5), 2),
            (c64(-0.2, -0.3), 1),
        ],
    )
    .unwrap()
}

fn fixture_inner() -> InnerFunction {
    InnerFunction::new(
        fixture_blaschke(),
        AtomicMeasure::new(vec![(0.4, 0.8), (2.9, 1.2)]).unwrap(),
        Complex::ONE,
    )
    .unwrap()
}

fn fixture_map() -> SelfMap {
    generate(&FamilySpec::MaxMultSelfMap {
        blaschke: fixture_blaschke(),
    })
    .unwrap()
}

fn bench_eval(c: &mut Criterion) {
    let b = fixture_blaschke();
    let theta = fixture_inner();
    c.bench_function("blaschke_eval_1024_points", |bench| {
        bench.iter(|| {
            let mut acc = Complex::ZERO;
            for k in 0..1024 {
                let z = Complex::from_polar(0.95, k as f64 * 0.006135923151542565);
                acc += b.eval(black_box(z)).unwrap();
            }
            acc
        })
    });
    c.bench_function("inner_log_abs_1024_points", |bench| {
        bench.iter(|| {
            let mut acc = 0.0;
            for k in 0..1024 {
                let z = Complex::from_polar(0.999, k as f64 * 0.006135923151542565);
                acc += theta.log_abs(black_box(z));
            }
            acc
        })
    });
}

fn bench_jets(c: &mut Criterion) {
    let map = fixture_map();
    let at = c64(0.15, -0.2);
    c.bench_function("selfmap_jet_order_16", |bench| {
        bench.iter(|| map.jet(black_box(at), 16).unwrap())
    });
}

fn bench_engine(c: &mut Criterion) {
    let b = fixture_blaschke();
    let map = fixture_map();
    c.bench_function("decide_blaschke_4_zeros", |bench| {
        bench.iter(|| decide_blaschke(black_box(&b), black_box(&map), black_box(&b)).unwrap())
    });
    c.bench_function("decide_derivative_4_zeros", |bench| {
        bench.iter(|| decide_derivative(black_box(&b), black_box(&map)).unwrap())
    });
}

fn bench_oracle(c: &mut Criterion) {
    let theta = fixture_inner();
    let map = fixture_map();
    let grid = GridSpec {
        radii: vec![0.9, 0.99],
        angular_count: 256,
        ..GridSpec::default()
    };
    c.bench_function("sup_quotient_2x256_grid", |bench| {
        bench.iter(|| sup_quotient(&theta, &map, &theta, black_box(&grid)).unwrap())
    });

    let mu = AtomicMeasure::new(vec![(0.4, 0.8), (2.9, 1.2), (4.4, 0.3)]).unwrap();
    let phi = Moebius::new(unit(1.9), c64(0.35, -0.15)).unwrap();
    let nu = mu.pushforward(&phi);
    c.bench_function("pushforward_modulus_check_100", |bench| {
        bench.iter(|| modulus_identity_check(black_box(&mu), &phi, &nu, 100))
    });
}

criterion_group!(benches, bench_eval, bench_jets, bench_engine, bench_oracle);
criterion_main!(benches);
