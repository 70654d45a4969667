use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use umbrella_core::asymptotics::{compare, theta_grid, ClosedFormId, FormVariant, SweepConfig};
use umbrella_core::circle::Umbrella;
use umbrella_core::normal_form::NormalFormCoeffs;
use umbrella_core::poly::sturm::distinct_real_roots;
use umbrella_core::roots::{flipped_counts, g_poly, AtlasRow};
use umbrella_core::sampling::random_coeff_sets;

fn sturm(c: &mut Criterion) {
    let sets = random_coeff_sets(1, 64);
    let polys: Vec<_> = sets.iter().map(g_poly).collect();
    c.bench_function("sturm count of g, 64 sets", |b| {
        b.iter(|| polys.iter().map(|p| distinct_real_roots(black_box(p)).unwrap()).sum::<usize>())
    });
    c.bench_function("atlas row without flipped counts", |b| {
        b.iter(|| AtlasRow::compute_quartics(black_box(&sets[0])).unwrap())
    });
}

fn first_terms(c: &mut Criterion) {
    let u = Umbrella::new(&NormalFormCoeffs::from_ints(-2, 0, 1).unwrap()).unwrap();
    let grid = theta_grid(90, 0.05);
    let cfg = SweepConfig::default();
    for id in [ClosedFormId::KappaG, ClosedFormId::Kappa2Hat, ClosedFormId::K] {
        c.bench_function(&format!("first term {} on 90 angles", id.name()), |b| {
            b.iter(|| compare(id, FormVariant::Rederived, &u, black_box(&grid), &cfg, 1e-3).unwrap())
        });
    }
}

fn flipped(c: &mut Criterion) {
    let set = NormalFormCoeffs::from_ints(-2, 1, 3).unwrap();
    c.bench_function("flipped-frame zero counts", |b| b.iter(|| flipped_counts(black_box(&set)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = sturm, first_terms, flipped
}
criterion_main!(benches);
