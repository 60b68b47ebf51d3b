use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diagres::classifier::{partition_check_with, valuation_identity_violations};
use diagres::par::Mode;
use diagres::suites;

const MODES: [(&str, Mode); 2] = [("parallel", Mode::Parallel), ("sequential", Mode::Sequential)];

fn partition(c: &mut Criterion) {
    let mut g = c.benchmark_group("partition_1e5");
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(name, 7), |b| b.iter(|| partition_check_with(mode, 7, 100_000)));
    }
    g.finish();
}

fn valuations(c: &mut Criterion) {
    let mut g = c.benchmark_group("valuation_identity_d500");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(name, 5), |b| b.iter(|| valuation_identity_violations(mode, 5, 500)));
    }
    g.finish();
}

fn crit(c: &mut Criterion) {
    let mut g = c.benchmark_group("crit_n4_N20");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(name, |b| b.iter(|| suites::crit(mode, &[0, 3, 5], 4, 20)));
    }
    g.finish();
}

fn twovar(c: &mut Criterion) {
    let mut g = c.benchmark_group("twovar_n6_N20");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(name, |b| b.iter(|| suites::twovar(mode, 6, 20)));
    }
    g.finish();
}

criterion_group!(benches, partition, valuations, crit, twovar);
criterion_main!(benches);
