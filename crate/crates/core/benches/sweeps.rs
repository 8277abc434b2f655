//! Sequential vs rayon execution on the sweeps that parallelise.
//!
//! Without the `parallel` feature both variants run the sequential path,
//! which makes the feature's overhead and gain directly comparable.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jshm_core::identity::{compare_pointwise_with, Lhs, Rhs};
use jshm_core::projection::pair_distribution_with;
use jshm_core::wilson::{certify_grid, regime_grid};
use jshm_core::{EigenSystem, Execution, Family, SchemeParams};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn pair_counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("pair_distribution");
    group.sample_size(10);
    for (n, k) in [(10, 4), (12, 4), (13, 5)] {
        let family = Family::complete(n, k).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("J({n},{k})")), &family, |b, f| {
                b.iter(|| pair_distribution_with(f, exec))
            });
        }
    }
    group.finish();
}

fn eigen_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigen_system");
    group.sample_size(10);
    for (n, k) in [(12, 5), (16, 6)] {
        let params = SchemeParams::new(n, k).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, params), &params, |b, &p| {
                b.iter(|| EigenSystem::with_execution(p, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn certificate_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify_grid");
    group.sample_size(10);
    for (k_max, n_max) in [(4, 12), (5, 14)] {
        let points = regime_grid(k_max, n_max);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("k<={k_max},n<={n_max}")), &points, |b, pts| {
                b.iter(|| certify_grid(pts, exec))
            });
        }
    }
    group.finish();
}

fn pointwise_identity(c: &mut Criterion) {
    let mut group = c.benchmark_group("compare_pointwise");
    group.sample_size(10);
    for (k, t) in [(4, 2), (5, 3)] {
        for (name, exec) in MODES {
            group.bench_function(BenchmarkId::new(name, format!("k={k},t={t}")), |b| {
                b.iter(|| compare_pointwise_with(k, t, Lhs::M, Rhs::OmegaCorrected, 2 * k, 2 * k + 12, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(sweeps, pair_counting, eigen_tables, certificate_grid, pointwise_identity);
criterion_main!(sweeps);
