use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fdds::fdds::DEFAULT_PRODUCT_CAP;
use fdds::gen::{self, random_fdds};
use fdds::scaling::{distinct_lengths, explicit_linear_instance, sweep_coefficient};
use fdds::solver::cycles::{solve_linear_compact, solve_linear_explicit, solve_linear_explicit_fast};
use fdds::solver::oracle::brute_force_solve_with;
use fdds::{CyclePoly, CycleSum, Exec};

fn product(c: &mut Criterion) {
    let mut group = c.benchmark_group("product");
    let mut rng = gen::rng(1);
    for n in [100usize, 300, 1000] {
        let a = random_fdds(&mut rng, n);
        let b = random_fdds(&mut rng, n);
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), n), &n, |bench, _| {
                bench.iter(|| a.product_with(black_box(&b), DEFAULT_PRODUCT_CAP, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(10);
    let p = CyclePoly::from_terms([(2, CycleSum::parse("1x2").unwrap()), (1, CycleSum::parse("1x4+1x6").unwrap())])
        .to_fdds_poly(100)
        .unwrap();
    let b = CycleSum::parse("16x2+4x4+18x6+1x12").unwrap().to_fdds(1000).unwrap();
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_function(format!("{exec:?}"), |bench| {
            bench.iter(|| brute_force_solve_with(&p, black_box(&b), 7, 1_000_000, exec).unwrap())
        });
    }
    group.finish();
}

fn linear(c: &mut Criterion) {
    let mut group = c.benchmark_group("linear");
    for n in [1_000usize, 10_000, 100_000] {
        let (a, b) = explicit_linear_instance(n);
        group.bench_with_input(BenchmarkId::new("explicit_fast", n), &n, |bench, _| {
            bench.iter(|| solve_linear_explicit_fast(&a, black_box(&b)))
        });
        if n <= 10_000 {
            group.bench_with_input(BenchmarkId::new("explicit", n), &n, |bench, _| {
                bench.iter(|| solve_linear_explicit(&a, black_box(&b)))
            });
        }
    }
    let mut rng = gen::rng(2);
    for count in [10usize, 100, 1000] {
        let a = sweep_coefficient();
        let b = a.product(&distinct_lengths(&mut rng, count));
        group.bench_with_input(BenchmarkId::new("compact", count), &count, |bench, _| {
            bench.iter(|| solve_linear_compact(&a, black_box(&b)))
        });
    }
    group.finish();
}

criterion_group!(benches, product, brute_force, linear);
criterion_main!(benches);
