//! Timings for the operations that dominate real workloads: exact signature
//! evaluation, jump isolation, pullback of step functions, strong
//! coprimality, and a one-item planner run.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use knotsig::angle::Angle;
use knotsig::laurent::{strongly_coprime, LaurentPoly};
use knotsig::planner::{build_family, CopyConvention};
use knotsig::seifert::{jump_angles, seifert_61, seifert_em, signature_at, step_function};
use knotsig::stepfn::{JumpRule, StepFunction};

fn signature_benches(c: &mut Criterion) {
    let small = seifert_61();
    let large = seifert_em(2).direct_sum(&seifert_61());
    c.bench_function("signature_at/2x2 at 1/12 turn", |b| {
        b.iter(|| signature_at(black_box(&small), &Angle::turn(1, 12), JumpRule::Strict).unwrap())
    });
    c.bench_function("signature_at/4x4 at 2/47 turn", |b| {
        b.iter(|| signature_at(black_box(&large), &Angle::turn(2, 47), JumpRule::Strict).unwrap())
    });
    c.bench_function("jump_angles/4x4", |b| {
        b.iter(|| jump_angles(black_box(&large)).unwrap())
    });
    c.bench_function("step_function/4x4", |b| {
        b.iter(|| step_function(black_box(&large)).unwrap())
    });
}

fn stepfn_benches(c: &mut Criterion) {
    let f = StepFunction::from_jumps(
        [30, 60, 90, 120, 150]
            .iter()
            .enumerate()
            .map(|(i, &n)| (Angle::turn(n, 360), if i % 2 == 0 { 2 } else { -2 }))
            .collect(),
    )
    .unwrap();
    c.bench_function("pullback_power/5 jumps, d = 13", |b| {
        b.iter(|| black_box(&f).pullback_power(13).unwrap())
    });
    c.bench_function("sum_over_dth_roots/5 jumps, d = 37", |b| {
        b.iter(|| black_box(&f).sum_over_dth_roots(37).unwrap())
    });
}

fn laurent_benches(c: &mut Criterion) {
    let p = LaurentPoly::parse("(3t-4)(4t-3)").unwrap();
    let q = LaurentPoly::parse("(7t-8)(8t-7)").unwrap();
    c.bench_function("strongly_coprime/k = 3 vs k = 7", |b| {
        b.iter(|| strongly_coprime(black_box(&p), black_box(&q)).unwrap())
    });
}

fn planner_benches(c: &mut Criterion) {
    c.bench_function("build_family/n = 2, one item", |b| {
        b.iter(|| build_family(2, 1, CopyConvention::StrictHalf, black_box(1)).unwrap())
    });
}

criterion_group!(
    benches,
    signature_benches,
    stepfn_benches,
    laurent_benches,
    planner_benches
);
criterion_main!(benches);
