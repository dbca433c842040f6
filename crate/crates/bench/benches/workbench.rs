//! Measurements for the hot paths: evaluation-matrix construction, exact
//! and hybrid rank, symmetrizer arithmetic, generic identity testing, and
//! a full cocharacter report.

use criterion::{criterion_group, criterion_main, Criterion};
use hpi_core::catalog::catalog_load;
use hpi_core::codim::{evaluation_matrix, Budget, Target};
use hpi_core::freealg::{is_identity_generic, parse_polynomial, ActionContext, DecorationAlphabet};
use hpi_core::symfunc::{
    cocharacter_report, young_symmetrizer, Partition, SymmetrizerVariant, YoungTableau,
};
use hpi_core::RankMode;
use std::hint::black_box;

fn bench_rank(c: &mut Criterion) {
    let loaded = catalog_load("ut2").unwrap();
    let em = evaluation_matrix(5, &loaded.algebra, Target::Ordinary, true, &Budget::default())
        .unwrap();
    let mut group = c.benchmark_group("rank_120x729");
    group.sample_size(30);
    group.bench_function("exact", |b| {
        b.iter(|| black_box(&em).codimension(RankMode::Exact))
    });
    group.bench_function("hybrid", |b| {
        b.iter(|| black_box(&em).codimension(RankMode::Hybrid { seed: 1 }))
    });
    group.finish();
}

fn bench_evaluation_matrix(c: &mut Criterion) {
    let loaded = catalog_load("ut2_z2").unwrap();
    let g = loaded.grading.clone().unwrap();
    c.bench_function("evaluation_matrix_graded_degree4", |b| {
        b.iter(|| {
            evaluation_matrix(
                4,
                black_box(&loaded.algebra),
                Target::Graded(&g),
                true,
                &Budget::default(),
            )
            .unwrap()
        })
    });
}

fn bench_symmetrizer(c: &mut Criterion) {
    let tableau = YoungTableau::row_major(Partition::new(vec![3, 2]).unwrap());
    c.bench_function("young_symmetrizer_squared_3_2", |b| {
        b.iter(|| {
            let e = young_symmetrizer(black_box(&tableau), SymmetrizerVariant::RowColumn);
            e.multiply(&e)
        })
    });
}

fn bench_generic_identity(c: &mut Criterion) {
    let loaded = catalog_load("ut2").unwrap();
    let f = parse_polynomial("([x1, x2])*([x3, x4])", &DecorationAlphabet::plain()).unwrap();
    c.bench_function("generic_identity_commutator_product", |b| {
        b.iter(|| {
            is_identity_generic(black_box(&f), &loaded.algebra, &ActionContext::Trivial).unwrap()
        })
    });
}

fn bench_cocharacter(c: &mut Criterion) {
    let loaded = catalog_load("ut2").unwrap();
    let mut group = c.benchmark_group("cocharacter");
    group.sample_size(20);
    group.bench_function("ut2_degree3", |b| {
        b.iter(|| {
            cocharacter_report(
                3,
                black_box(&loaded.algebra),
                Target::Ordinary,
                true,
                &Budget::default(),
                RankMode::Hybrid { seed: 1 },
            )
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_rank,
    bench_evaluation_matrix,
    bench_symmetrizer,
    bench_generic_identity,
    bench_cocharacter
);
criterion_main!(benches);
