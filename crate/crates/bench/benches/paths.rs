use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use frobenius_bench::progressions;
use frobenius_core::sylvester::weighted_sum_with_table;
use frobenius_core::{
    apery_arith, apery_general, gap_set, oracle_power_sum, oracle_weighted_sum, power_sum, power_sum_ap,
    weighted_sum_ap, LambdaSpec,
};
use std::hint::black_box;

fn residue_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("apery");
    for (name, ap) in progressions() {
        let gens = ap.generators();
        group.bench_with_input(BenchmarkId::new("row-fill", name), &ap, |b, ap| b.iter(|| apery_arith(black_box(ap))));
        group.bench_with_input(BenchmarkId::new("dijkstra", name), &gens, |b, g| b.iter(|| apery_general(black_box(g))));
    }
    group.finish();
}

fn power_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("power-sum mu=5");
    group.sample_size(10);
    for (name, ap) in progressions() {
        let gens = ap.generators();
        group.bench_with_input(BenchmarkId::new("closed-form", name), &ap, |b, ap| {
            b.iter(|| power_sum_ap(black_box(ap), 5).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("apery", name), &gens, |b, g| {
            b.iter(|| power_sum(&apery_general(black_box(g)), 5).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle", name), &gens, |b, g| {
            b.iter(|| oracle_power_sum(&gap_set(black_box(g)), 5))
        });
    }
    group.finish();
}

fn weighted_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("weighted-sum mu=3");
    group.sample_size(20);
    for spec in ["-1/2", "root(3,2)", "zeta(5)"] {
        let lambda = LambdaSpec::parse(spec).unwrap().to_element().unwrap();
        for (name, ap) in progressions().into_iter().take(3) {
            let gens = ap.generators();
            let id = format!("{name} lambda={spec}");
            group.bench_with_input(BenchmarkId::new("closed-form", &id), &ap, |b, ap| {
                b.iter(|| weighted_sum_ap(black_box(ap), 3, &lambda).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("apery", &id), &gens, |b, g| {
                b.iter(|| weighted_sum_with_table(&apery_general(black_box(g)), 3, &lambda).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("oracle", &id), &gens, |b, g| {
                b.iter(|| oracle_weighted_sum(&gap_set(black_box(g)), 3, &lambda))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, residue_tables, power_sums, weighted_sums);
criterion_main!(benches);
