use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lambek::algebra::{builtin, enumerate_biclosed};
use lambek::corpus::{parse_corpus, run_corpus, RunConfig, GOLDEN};
use lambek::dialectica::check_laws;
use lambek::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn corpus(c: &mut Criterion) {
    let entries = parse_corpus(GOLDEN).unwrap();
    let cfg = RunConfig::default();
    let mut g = c.benchmark_group("golden-corpus");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_corpus(&entries, &cfg, exec))
        });
    }
    g.finish();
}

fn laws(c: &mut Criterion) {
    let host = builtin("two").unwrap();
    let mut g = c.benchmark_group("laws-two");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_laws(&host, 10, 2, 1, exec))
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate-3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_biclosed(3, exec))
        });
    }
    g.finish();
}

criterion_group!(benches, corpus, laws, enumeration);
criterion_main!(benches);
