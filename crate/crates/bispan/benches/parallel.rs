//! Sequential against rayon execution on the heavier loops.
//! Build with `--no-default-features` and both arms run sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bispan::catalog::named_graph;
use bispan::enumerate::{enumerate_bispanning_with, Kind};
use bispan::exchange::{build_tau_with, nu_with, Form, Variant, NU_CONVENTION};
use bispan::Exec;

const MODES: [(&str, Exec); 2] = [("seq", Exec::Seq), ("par", Exec::Par)];

fn tau3(c: &mut Criterion) {
    let mut group = c.benchmark_group("tau3");
    for name in ["B6,12", "B7,1", "B8,1"] {
        let (g, _) = named_graph(name).unwrap();
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, name), &g, |b, g| {
                b.iter(|| build_tau_with(g, Variant::Tau3, Form::Directed, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn nu(c: &mut Criterion) {
    let mut group = c.benchmark_group("nu");
    group.sample_size(10);
    let (g, _) = named_graph("B7,1").unwrap();
    for (label, exec) in MODES {
        group.bench_function(label, |b| b.iter(|| nu_with(&g, NU_CONVENTION, exec).unwrap()));
    }
    group.finish();
}

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_simple_7");
    group.sample_size(10);
    for (label, exec) in MODES {
        group.bench_function(label, |b| b.iter(|| enumerate_bispanning_with(7, Kind::Simple, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, tau3, nu, enumerate);
criterion_main!(benches);
