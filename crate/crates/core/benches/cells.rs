use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use periodica::algebra::presets;
use periodica::complex::homotopy_hom;
use periodica::derived::{k_projective_replacement, list_indecomposables_hereditary_dm};
use periodica::complex::PeriodicComplex;
use periodica::hochschild::{hh_graded_laurent, LaurentSetup};
use periodica::par::{map_cells_with, Strategy};
use periodica::Field;

fn hh_grid(c: &mut Criterion) {
    let alg = presets::build(presets::linear_a(Field::Rationals, 3));
    let setup = LaurentSetup::new(alg, 2).unwrap();
    let cells: Vec<(usize, i64)> = (0..4).flat_map(|p| (-4..=4).map(move |q| (p, q))).collect();
    let mut group = c.benchmark_group("hh_grid_kA3_m2");
    for (name, strategy) in [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)] {
        group.bench_function(name, |b| {
            b.iter(|| map_cells_with(strategy, black_box(&cells), |&(p, q)| hh_graded_laurent(&setup, p, q).unwrap()))
        });
    }
    group.finish();
}

fn derived_hom_table(c: &mut Criterion) {
    let alg = presets::build(presets::linear_a(Field::Rationals, 3));
    let objs = list_indecomposables_hereditary_dm(&alg, 2).unwrap();
    let reps: Vec<PeriodicComplex> = objs
        .iter()
        .map(|(x, s)| k_projective_replacement(&PeriodicComplex::stalk(2, x, *s as i64), 8).unwrap().complex)
        .collect();
    let pairs: Vec<(usize, usize)> = (0..reps.len()).flat_map(|i| (0..reps.len()).map(move |j| (i, j))).collect();
    let mut group = c.benchmark_group("derived_hom_table_kA3_m2");
    for (name, strategy) in [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)] {
        group.bench_function(name, |b| {
            b.iter(|| map_cells_with(strategy, black_box(&pairs), |&(i, j)| homotopy_hom(&reps[i], &reps[j], 0).unwrap()))
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = hh_grid, derived_hom_table
}
criterion_main!(benches);
