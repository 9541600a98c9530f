//! Serial versus threaded refinement sweeps. Build with
//! `--no-default-features` to measure the sequential fallback, where
//! `Workers::Threads` degrades to a serial map.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nematic_core::{check_uniqueness, ExperimentConfig, System, Workers};

fn sweep(c: &mut Criterion) {
    let mut cfg = ExperimentConfig::smooth(System::Gl, 513, 65, 1.0, 0.02).unwrap();
    cfg.dt_reference = 10.0 * cfg.grid_reference.dx().powi(2);
    let levels = [65, 129, 257];
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .max(2);

    let mut group = c.benchmark_group("uniqueness_sweep");
    group.sample_size(10);
    for (name, workers) in [
        ("serial", Workers::Serial),
        ("threads", Workers::Threads(threads)),
    ] {
        group.bench_with_input(BenchmarkId::new(name, levels.len()), &workers, |b, &w| {
            b.iter(|| check_uniqueness(&cfg, &levels, w).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
