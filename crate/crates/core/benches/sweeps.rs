use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use toricgrass::degen::{sagbi_verify, sweep, Bidegree};
use toricgrass::pluecker::{sign_table, Family};
use toricgrass::{Exec, Limits, Shape};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn sign_tables(c: &mut Criterion) {
    let shape = Shape::new(3, 5).unwrap();
    let limits = Limits::default();
    let mut group = c.benchmark_group("sign_table_3_5_k4");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sign_table(shape, Family::Pbw, 4, &limits, exec).unwrap())
        });
    }
    group.finish();
}

fn sagbi_sweep(c: &mut Criterion) {
    let shape = Shape::new(2, 4).unwrap();
    let limits = Limits::default();
    let mut group = c.benchmark_group("sagbi_sweep_2_4");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                sweep(2, 2, 2, exec, |cell: Bidegree| sagbi_verify(Family::Pbw, shape, cell, &limits, exec)).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, sign_tables, sagbi_sweep);
criterion_main!(benches);
