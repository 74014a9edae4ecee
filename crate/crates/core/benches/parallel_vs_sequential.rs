use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use troprank::corpus::corpus;
use troprank::golden::matrix_b;
use troprank::lift::kapranov_upper_with;
use troprank::obstruct::{certify_lower_bound_with, CertifyOptions};
use troprank::par::Exec;
use troprank::scalars::FieldSpec;
use troprank::tropical::{find_witness_with, TropMatrix};

const SCHEDULES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn certify(c: &mut Criterion) {
    let b = matrix_b();
    let mut group = c.benchmark_group("certify_B_F3");
    for (name, exec) in SCHEDULES {
        let opts = CertifyOptions { exec, ..CertifyOptions::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| certify_lower_bound_with(black_box(&b), 3, FieldSpec::Fp(3), &opts).unwrap())
        });
    }
    group.finish();
}

fn witness(c: &mut Criterion) {
    // 5 rows of independent-looking data with one row forced dependent
    let b = TropMatrix::from_fn(5, 9, |i, j| {
        let x = ((i * 7 + j * 13 + i * j * 5) % 11) as i64;
        troprank::scalars::int(if i == 4 { 0 } else { x })
    });
    let rows: Vec<usize> = (0..5).collect();
    let mut group = c.benchmark_group("witness_5x9");
    for (name, exec) in SCHEDULES {
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| find_witness_with(black_box(&b), &rows, exec).unwrap())
        });
    }
    group.finish();
}

fn lifts(c: &mut Criterion) {
    let instances = corpus(40, 1, 3..=8, 5).unwrap();
    let mut group = c.benchmark_group("corpus_lifts_GF4");
    group.sample_size(20);
    for (name, exec) in SCHEDULES {
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| {
                for inst in &instances {
                    black_box(kapranov_upper_with(&inst.matrix, FieldSpec::Gf4, exec).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, certify, witness, lifts);
criterion_main!(benches);
