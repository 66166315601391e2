//! Benchmarks for the hot paths: identity sweeps, construction of the large
//! Tits algebras, exact linear algebra, and the irreducibility test.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use zorn::altsuper::{build_b12, build_b_gamma, build_divided_powers};
use zorn::char3::build_char3_superalgebra;
use zorn::composition::{build_composition, CompositionKind};
use zorn::identities::check_super_jacobi;
use zorn::jordan::JordanWithTrace;
use zorn::linalg::Matrix;
use zorn::meataxe::is_simple;
use zorn::tits::build_tits;
use zorn::{FieldSpec, DEFAULT_SEED};

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn jacobi_sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi_sweep");
    group.sample_size(10);

    let s = build_composition(CompositionKind::SplitCayley, gf(3))
        .unwrap()
        .bracket_algebra()
        .unwrap();
    let bj = build_char3_superalgebra(&s, &build_b12(gf(3)).unwrap()).unwrap();
    group.bench_function("bj_dim24", |b| b.iter(|| check_super_jacobi(&bj.algebra)));

    let f4 = {
        let c = build_composition(CompositionKind::SplitCayley, gf(7)).unwrap();
        let j = JordanWithTrace::h3(&build_composition(CompositionKind::GroundField, gf(7)).unwrap()).unwrap();
        build_tits(&c, &j).unwrap()
    };
    group.bench_function("f4_dim52", |b| b.iter(|| check_super_jacobi(&f4.algebra)));

    let gamma = build_divided_powers(2, gf(3)).unwrap();
    let bg = build_b_gamma(&gamma).unwrap();
    let bj2 = build_char3_superalgebra(&s, &bg.algebra).unwrap();
    group.bench_function("bj_1_2_7_dim144", |b| b.iter(|| check_super_jacobi(&bj2.algebra)));
    group.finish();
}

fn constructions(c: &mut Criterion) {
    let mut group = c.benchmark_group("construction");
    group.sample_size(10);
    group.bench_function("e7_entry", |b| {
        b.iter(|| {
            let c = build_composition(CompositionKind::Matrix2, gf(7)).unwrap();
            let j = JordanWithTrace::h3(&build_composition(CompositionKind::SplitCayley, gf(7)).unwrap()).unwrap();
            build_tits(&c, &j).unwrap().dim()
        })
    });
    group.finish();
}

fn linalg(c: &mut Criterion) {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let f = gf(3);
    let mut rng = StdRng::seed_from_u64(DEFAULT_SEED);
    let m = Matrix::from_fn(f, 60, 60, |_, _| f.from_integer(rng.gen_range(0..3)));
    c.bench_function("rref_60x60_gf3", |b| {
        b.iter_batched(|| m.clone(), |m| m.rref(), BatchSize::SmallInput)
    });
}

fn meataxe(c: &mut Criterion) {
    let s = build_composition(CompositionKind::SplitCayley, gf(3))
        .unwrap()
        .bracket_algebra()
        .unwrap();
    let bj = build_char3_superalgebra(&s, &build_b12(gf(3)).unwrap()).unwrap();
    let mut group = c.benchmark_group("meataxe");
    group.sample_size(10);
    group.bench_function("bj_simplicity", |b| {
        b.iter(|| is_simple(&bj.algebra, DEFAULT_SEED).unwrap())
    });
    group.finish();
}

criterion_group!(benches, jacobi_sweeps, constructions, linalg, meataxe);
criterion_main!(benches);
