use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use malcev_core::harmonics;
use malcev_core::sampling::DEFAULT_SEED;
use malcev_core::spectral;
use malcev_core::{builtin, Exec};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn defect_norm(c: &mut Criterion) {
    let alg = builtin("octonion").unwrap();
    let mut g = c.benchmark_group("defect_norm_2000");
    for (name, exec) in POLICIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(alg.defect_norm(2000, DEFAULT_SEED, exec).unwrap()))
        });
    }
    g.finish();
}

fn orbit_stats(c: &mut Criterion) {
    let alg = builtin("octonion").unwrap();
    let (x, y) = (alg.basis(0) * 1.3 + alg.basis(4), alg.basis(2));
    let mut g = c.benchmark_group("orbit_stats_20000");
    for (name, exec) in POLICIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(spectral::orbit_stats(&alg, &x, &y, 50.0, 20_000, 1e-3, exec).unwrap()))
        });
    }
    g.finish();
}

fn laplacian_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("laplacian_table_k5");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(harmonics::laplacian_table(5, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, defect_norm, orbit_stats, laplacian_table);
criterion_main!(benches);
