use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use uniform_airy::exec::Execution;
use uniform_airy::suites::{sweep, Mode, SweepConfig};
use uniform_airy::PrecisionContext;

fn grid_sweep(c: &mut Criterion) {
    let ctx = PrecisionContext::new(30).unwrap();
    let grid = [(0.2, 0.0), (0.35, 0.0), (0.5, 0.0), (0.65, 0.0), (0.3, 0.2), (0.5, 0.3)];
    let mut group = c.benchmark_group("section3_sweep");
    group.sample_size(10).measurement_time(Duration::from_secs(30));
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        let cfg = SweepConfig { nu: 50.0, m: 1, mode: Mode::Section3, exec, ..SweepConfig::default() };
        group.bench_with_input(BenchmarkId::new(name, grid.len()), &cfg, |b, cfg| {
            b.iter(|| {
                let rows = sweep(&grid, cfg, &ctx);
                assert!(rows.iter().all(|r| r.is_ok()));
                rows
            })
        });
    }
    group.finish();
}

criterion_group!(benches, grid_sweep);
criterion_main!(benches);
