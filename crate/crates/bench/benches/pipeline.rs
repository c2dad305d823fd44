use criterion::{criterion_group, criterion_main, Criterion};
use excprime_bench::CURVES;
use excprime_core::audit::{audit_ec_prime, audit_mult_prime};
use excprime_core::{
    ec_exceptional_primes, mult_exceptional_primes, EcPipelineParams, MultParams, RationalTuple,
};

fn ec(c: &mut Criterion) {
    let mut g = c.benchmark_group("ec");
    g.sample_size(10);
    let params = EcPipelineParams::new(CURVES.0, CURVES.1, 4, 6, 1000);
    g.bench_function("certificate C=4 L=6", |b| {
        b.iter(|| ec_exceptional_primes(&params).unwrap())
    });
    g.bench_function("audit p=101", |b| {
        b.iter(|| audit_ec_prime(101, &params, 1).unwrap())
    });
    g.bench_function("audit p=11 depth 2", |b| {
        b.iter(|| audit_ec_prime(11, &params, 2).unwrap())
    });
    g.finish();
}

fn mult(c: &mut Criterion) {
    let fs = RationalTuple::parse(&["0,1", "1,1"]).unwrap();
    let mut g = c.benchmark_group("mult");
    g.sample_size(10);
    for l in [2u32, 4] {
        let params = MultParams::new(l, 1000);
        g.bench_function(format!("certificate L={l}"), |b| {
            b.iter(|| mult_exceptional_primes(&fs, &params).unwrap())
        });
    }
    g.bench_function("audit p=101", |b| {
        b.iter(|| audit_mult_prime(101, &fs, 2, 4, 1).unwrap())
    });
    g.finish();
}

criterion_group!(benches, ec, mult);
criterion_main!(benches);
