//! Parallel vs sequential throughput on the data-parallel inner loops.
//!
//! Built with default features, the plain entry points fan out over
//! rayon and the `_seq` twins stay single-threaded, so one run shows the
//! speedup. Without the `parallel` feature both sides are sequential.

use criterion::{criterion_group, criterion_main, Criterion};

use rllseq::enumeration::{count_table, count_table_seq};
use rllseq::generators::generate_lex;
use rllseq::oracle::{enumerate_ns_necklaces, enumerate_ns_necklaces_seq};
use rllseq::syncsim::{simulate, simulate_seq, ChannelConfig};

fn bench_necklace_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("necklace_scan_18_2");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| enumerate_ns_necklaces(18, 2).unwrap().len())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| enumerate_ns_necklaces_seq(18, 2).unwrap().len())
    });
    group.finish();
}

fn bench_count_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_table_20_8");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| count_table(20, 8).unwrap()));
    group.bench_function("sequential", |b| b.iter(|| count_table_seq(20, 8).unwrap()));
    group.finish();
}

fn bench_simulation(c: &mut Criterion) {
    let seq = generate_lex(16, 3).unwrap();
    let cfg = ChannelConfig {
        flip_prob: 0.1,
        trials: 20_000,
        seed: 42,
    };
    let mut group = c.benchmark_group("simulate_16_3_20k");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| simulate(&seq, &cfg).unwrap()));
    group.bench_function("sequential", |b| {
        b.iter(|| simulate_seq(&seq, &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_necklace_scan,
    bench_count_table,
    bench_simulation
);
criterion_main!(benches);
