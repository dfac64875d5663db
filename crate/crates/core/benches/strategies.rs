use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use trinomial_core::fixtures::{ex1, ex3};
use trinomial_core::grading::grading_data;
use trinomial_core::oracle::{count_monomials, hilbert_cross_check, GridSpec};
use trinomial_core::polyhedral::build_divisor;
use trinomial_core::sample::{batch, SampleSpec};
use trinomial_core::Strategy;

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn cross_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("hilbert_cross_check");
    group.sample_size(10);
    for (label, t) in [
        ("ex3", ex3()),
        (
            "random_n5",
            batch(
                1,
                1,
                SampleSpec {
                    max_n: 5,
                    max_exp: 4,
                    require_unit: false,
                },
            )[0]
            .clone(),
        ),
    ] {
        let g = grading_data(&t).unwrap();
        let d = build_divisor(&t, &g).unwrap();
        for (name, s) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, label), &s, |b, &s| {
                b.iter(|| hilbert_cross_check(&g, &d, GridSpec::new(2), s).unwrap())
            });
        }
    }
    group.finish();
}

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_monomials");
    let t = ex1();
    let g = grading_data(&t).unwrap();
    let m: Vec<BigInt> = g.mu.iter().map(|x| x * 8).collect();
    for (name, s) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "ex1_8mu"), |b| {
            b.iter(|| count_monomials(&g, black_box(&m), s))
        });
    }
    group.finish();
}

fn random_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("random_batch_verdicts");
    let corpus = batch(
        3,
        64,
        SampleSpec {
            max_n: 6,
            max_exp: 5,
            require_unit: false,
        },
    );
    for (name, s) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| s.map(&corpus, |t| t.is_rigid().verdict)));
    }
    group.finish();
}

criterion_group!(benches, cross_check, counting, random_batch);
criterion_main!(benches);
