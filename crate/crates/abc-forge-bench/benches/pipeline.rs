use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use abc_forge::abc_family::{AbcParams, TauCandidate};
use abc_forge::class_order::{check_suitable, ClassGroupOracle, OracleBudget, SuitabilityOptions};
use abc_forge::exact_poly::IntPoly;
use abc_forge::galois_cert::certify_sn;
use abc_forge::real_embeddings::{isolate_real_roots, refine_root};
use abc_forge::units_kummer::{condition4_check, FieldContext, KummerOptions, NumberField};

fn params3() -> AbcParams {
    AbcParams::new(3, 2, vec![1, -1])
}

fn relaxed() -> SuitabilityOptions {
    SuitabilityOptions {
        min_abs_a: 3,
        ..SuitabilityOptions::default()
    }
}

fn bench_exact_poly(c: &mut Criterion) {
    let small = IntPoly::from_i64(&[-25, -1, 24, 1]);
    let big = params3().build_f(100_003).unwrap();
    c.bench_function("discriminant deg3 small", |b| {
        b.iter(|| black_box(&small).discriminant().unwrap())
    });
    c.bench_function("discriminant deg3 tau=1e5", |b| {
        b.iter(|| black_box(&big).discriminant().unwrap())
    });
}

fn bench_roots(c: &mut Criterion) {
    let f = IntPoly::from_i64(&[-25, -1, 24, 1]);
    let boxes = isolate_real_roots(&f).unwrap();
    let eps = abc_forge::num_rational::BigRational::new(1.into(), abc_forge::num_bigint::BigInt::from(1u64) << 63);
    c.bench_function("isolate roots tau=5", |b| {
        b.iter(|| isolate_real_roots(black_box(&f)).unwrap())
    });
    c.bench_function("refine root to 63 bits", |b| {
        b.iter(|| refine_root(black_box(&f), &boxes[0], &eps))
    });
}

fn bench_galois(c: &mut Criterion) {
    let f = IntPoly::from_i64(&[-25, -1, 24, 1]);
    c.bench_function("certify_sn tau=5", |b| {
        b.iter(|| certify_sn(black_box(&f), 200))
    });
}

fn bench_kummer(c: &mut Criterion) {
    let params = params3();
    let cand = TauCandidate::new(&params, 5).unwrap();
    c.bench_function("condition4 tau=5", |b| {
        b.iter(|| {
            let mut ctx = FieldContext::new(&params, &cand, 64).unwrap();
            condition4_check(&mut ctx, 2, KummerOptions::default()).unwrap()
        })
    });
}

fn bench_pipeline(c: &mut Criterion) {
    let params = params3();
    c.bench_function("check_suitable tau=5", |b| {
        b.iter(|| check_suitable(black_box(&params), 5, &relaxed()))
    });
}

fn bench_oracle(c: &mut Criterion) {
    // disc 17609 field (tau = 3): a fast verified class-group run
    let field = NumberField::new(IntPoly::from_i64(&[-9, -1, 8, 1]));
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("class group disc 17609", |b| {
        b.iter(|| ClassGroupOracle::compute(black_box(&field), OracleBudget::default()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_exact_poly,
    bench_roots,
    bench_galois,
    bench_kummer,
    bench_pipeline,
    bench_oracle
);
criterion_main!(benches);
