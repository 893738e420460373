//! Sequential against rayon-parallel execution for the two scans.
//! Without the `parallel` feature both rows run the sequential path.

use std::hint::black_box;

use bibundle_core::classifier::enumerate::candidates_in_box;
use bibundle_core::{tanfield, Exec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn tan_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("tan_scan");
    group.sample_size(10);
    for max_m in [60u64, 120] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), max_m), &max_m, |b, &m| {
                b.iter(|| tanfield::scan(black_box(m), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn box_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("box_scan");
    for bound in [500i64, 2000] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), bound), &bound, |b, &k| {
                b.iter(|| candidates_in_box(black_box(3), k, exec))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, tan_scan, box_scan);
criterion_main!(benches);
