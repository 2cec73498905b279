use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use floer_core::ainfty::{self, fixtures, CoefficientMode, DisplayMutation};
use floer_core::morse;
use floer_core::novikov::parse_series;
use floer_core::polytopes::{self, Polytope};
use floer_core::{Exponent, ZSeries};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn polytopes(c: &mut Criterion) {
    c.bench_function("f_vector K_9", |b| b.iter(|| polytopes::f_vector(Polytope::K, black_box(9)).unwrap()));
    c.bench_function("boundary check J_5", |b| b.iter(|| polytopes::boundary_map_consistency(Polytope::J, black_box(5)).unwrap()));
}

fn novikov(c: &mut Criterion) {
    let a: ZSeries = parse_series("1 - t^1/2 + 3t^2 - t^7/3").unwrap();
    let cutoff = Exponent::int(12);
    c.bench_function("invert to t^12", |b| b.iter(|| black_box(&a).invert(&cutoff).unwrap()));
    let inv = a.invert(&cutoff).unwrap();
    c.bench_function("multiply truncated", |b| b.iter(|| black_box(&inv) * black_box(&inv)));
}

fn complexes(c: &mut Criterion) {
    c.bench_function("symbolic delta squared q<=5", |b| b.iter(|| ainfty::symbolic_delta_squared(5, 3, DisplayMutation::default())));
    let sphere = morse::build_floer_complex(&morse::sphere_morse(4, 3)).unwrap();
    c.bench_function("check A-infinity sphere", |b| b.iter(|| ainfty::check_a_infinity(black_box(&sphere)).unwrap()));
    let mut rng = StdRng::seed_from_u64(7);
    let d = fixtures::random_m1_datum(&mut rng, 3, 1);
    let fc = ainfty::assemble_differential(&d).unwrap();
    c.bench_function("cohomology random 3 labels", |b| b.iter(|| ainfty::cohomology(black_box(&fc), CoefficientMode::Rational).unwrap()));
}

criterion_group!(benches, polytopes, novikov, complexes);
criterion_main!(benches);
