//! Sequential vs parallel on the data-parallel kernels.
//!
//! Without the `parallel` feature both arms run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use schroq_core::fdim::{build_l, random_reps, Field};
use schroq_core::pbw::Generator;
use schroq_core::verma::{build_verma, build_verma_sl2, build_verma_with};
use schroq_core::wmod::{check_relations_with, defining_relations, find_intertwiners_with};
use schroq_core::{Scalar, Strategy, Weight};

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn relations(c: &mut Criterion) {
    let rels = defining_relations();
    let mut g = c.benchmark_group("relation_check");
    g.sample_size(10);
    for depth in [6usize, 10] {
        let m = build_verma(&Weight::generic(), &Scalar::z(), depth);
        for (name, s) in STRATEGIES {
            g.bench_with_input(BenchmarkId::new(name, depth), &m, |b, m| {
                b.iter(|| black_box(check_relations_with(m, &rels, s)))
            });
        }
    }
    g.finish();
}

fn verma_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("verma_build");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_function(name, |b| {
            b.iter(|| black_box(build_verma_with(&Weight::generic(), &Scalar::z(), 16, s)))
        });
    }
    g.finish();
}

fn intertwiners(c: &mut Criterion) {
    let src = build_verma_sl2(&Weight::q_half(2), 6);
    let dst = build_l(2);
    let mut g = c.benchmark_group("sl2_intertwiners");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_function(name, |b| {
            b.iter(|| black_box(find_intertwiners_with(&src, &dst, 0, &Generator::SL2, s)))
        });
    }
    g.finish();
}

fn quiver_reps(c: &mut Criterion) {
    let mut g = c.benchmark_group("random_reps");
    for (name, s) in STRATEGIES {
        g.bench_function(name, |b| {
            b.iter(|| black_box(random_reps(7, 200, 3, 4, Field::Rationals, s)))
        });
    }
    g.finish();
}

criterion_group!(benches, relations, verma_build, intertwiners, quiver_reps);
criterion_main!(benches);
