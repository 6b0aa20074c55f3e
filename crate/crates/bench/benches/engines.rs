use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use tenfold::chartable::character_table;
use tenfold::clifford::{abs_group, Field};
use tenfold::cochain::klein_with_projections;
use tenfold::cohomology::{group_cohomology, Coefficients};
use tenfold::group::presets;
use tenfold::kgroup::{k_group_result, SymmetryData};
use tenfold::superalgebra::oracle_blocks;
use tenfold::{Cochain, GSet, Z2Hom};

fn group(name: &str) -> Arc<tenfold::FiniteGroup> {
    Arc::new(presets::by_name(name).expect("preset"))
}

fn engines(c: &mut Criterion) {
    let s4 = group("S4");
    c.bench_function("character_table S4", |b| b.iter(|| character_table(black_box(&s4)).unwrap()));

    let (k, p1, p2) = klein_with_projections();
    let regular = Arc::new(GSet::cosets(&k, &[0]).unwrap());
    c.bench_function("H^3 Z2xZ2 regular, phi=p1", |b| {
        b.iter(|| group_cohomology(&k, black_box(&regular), &p1, Coefficients::Integers, 3).unwrap())
    });

    c.bench_function("abs_group over R, p-q = 0..7", |b| {
        b.iter(|| (0..8).map(|p| abs_group(black_box(p), 0, Field::R).unwrap()).count())
    });

    let d4 = group("D4");
    let phi = Z2Hom::all(&d4).into_iter().find(|h| !h.is_trivial()).expect("D4 has a sign");
    let s = SymmetryData::untwisted(d4.clone(), phi.clone(), Z2Hom::trivial(8)).unwrap();
    c.bench_function("k_group_result D4", |b| b.iter(|| k_group_result(black_box(&s)).unwrap()));

    let tau = Cochain::zero(s.tau.module(), 2);
    c.bench_function("wedderburn oracle D4", |b| {
        b.iter(|| oracle_blocks(&d4, &phi, &Z2Hom::trivial(8), black_box(&tau), 1).unwrap())
    });

    let q = SymmetryData::untwisted(k.clone(), p1, p2).unwrap();
    c.bench_function("k_group_result Z2xZ2 p1 p2", |b| b.iter(|| k_group_result(black_box(&q)).unwrap()));
}

criterion_group!(benches, engines);
criterion_main!(benches);
