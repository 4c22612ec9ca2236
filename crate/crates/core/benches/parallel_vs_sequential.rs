use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mw_core::chow::{chow_ring, kahler_report};
use mw_core::invariants::{tutte_polynomial_with, TutteMethod};
use mw_core::realization::realizability_table;
use mw_core::{catalog, CatalogName, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn tutte(c: &mut Criterion) {
    let m = catalog(CatalogName::Pappus).unwrap();
    let mut g = c.benchmark_group("tutte_subset_sum_pappus");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| tutte_polynomial_with(&m, TutteMethod::SubsetSum, exec))
        });
    }
    g.finish();
}

fn finite_field_search(c: &mut Criterion) {
    let m = catalog(CatalogName::Pappus).unwrap();
    let mut g = c.benchmark_group("realizability_table_pappus_q13");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| realizability_table(&m, 13, 1_000_000, exec).unwrap())
        });
    }
    g.finish();
}

fn pairing(c: &mut Criterion) {
    let ring = chow_ring(&catalog(CatalogName::Vamos).unwrap()).unwrap();
    let beta = ring.beta();
    let mut g = c.benchmark_group("kahler_pairing_vamos_k1");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| kahler_report(&ring, 1, &beta, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, tutte, finite_field_search, pairing);
criterion_main!(benches);
