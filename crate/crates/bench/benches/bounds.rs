use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use degenbound::bounds::{degenerate_bound_max_k, qhamming_max_k};
use degenbound::calculus::{hprime_sign, SpherePolynomial};
use degenbound::exact::{sphere_sum, BigRational};
use degenbound::stabilizer::{distance, parse_code};
use degenbound::thresholds::threshold_report;

const FIVE_QUBIT: &str = "XZZXI\nIXZZX\nXIXZZ\nZXIXZ";
const SHOR: &str = "ZZIIIIIII\nIZZIIIIII\nIIIZZIIII\nIIIIZZIII\nIIIIIIZZI\nIIIIIIIZZ\nXXXXXXIII\nIIIXXXXXX";

fn bench_sphere_sum(c: &mut Criterion) {
    c.bench_function("sphere_sum n=2000 t=7", |b| {
        b.iter(|| sphere_sum(black_box(2000), black_box(7)))
    });
}

fn bench_max_k(c: &mut Criterion) {
    c.bench_function("qhamming_max_k sweep n<=500 t=2", |b| {
        b.iter(|| {
            for n in 1..=500u32 {
                black_box(qhamming_max_k(n, 2));
            }
        })
    });
    c.bench_function("degenerate_bound_max_k sweep n<=500 t=1", |b| {
        b.iter(|| {
            for n in 3..=500u32 {
                black_box(degenerate_bound_max_k(n, 1));
            }
        })
    });
}

fn bench_thresholds(c: &mut Criterion) {
    let mut group = c.benchmark_group("thresholds");
    group.sample_size(10);
    group.bench_function("threshold_report t=2", |b| {
        b.iter(|| threshold_report(black_box(2), None).unwrap())
    });
    group.bench_function("threshold_report t=4", |b| {
        b.iter(|| threshold_report(black_box(4), None).unwrap())
    });
    group.finish();
}

fn bench_calculus(c: &mut Criterion) {
    c.bench_function("hprime_sign t=20 x=2t", |b| {
        let x = BigRational::from_integer(40.into());
        b.iter(|| hprime_sign(black_box(20), black_box(&x)).unwrap())
    });
    c.bench_function("derivative triple sweep t=8 x<=100", |b| {
        b.iter_batched(
            || SpherePolynomial::new(8),
            |poly| {
                for x in 8..=100i64 {
                    black_box(poly.triple(&BigRational::from_integer(x.into())));
                }
            },
            BatchSize::SmallInput,
        )
    });
}

fn bench_stabilizer(c: &mut Criterion) {
    let five = parse_code(FIVE_QUBIT).unwrap();
    let shor = parse_code(SHOR).unwrap();
    c.bench_function("distance five-qubit", |b| {
        b.iter(|| distance(black_box(&five), None).unwrap())
    });
    c.bench_function("distance shor", |b| b.iter(|| distance(black_box(&shor), None).unwrap()));
}

criterion_group!(
    benches,
    bench_sphere_sum,
    bench_max_k,
    bench_thresholds,
    bench_calculus,
    bench_stabilizer
);
criterion_main!(benches);
