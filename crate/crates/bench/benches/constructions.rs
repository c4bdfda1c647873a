use std::hint::black_box;

use abelmap_core::regular::build_n;
use abelmap_core::report::classify_group;
use abelmap_core::ybe::{closed_form, MapSolution};
use abelmap_core::{build_group, enumerate_abelian_maps};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_abelian_maps");
    for spec in ["D:12", "S:4", "S:5"] {
        let grp = build_group(spec).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(spec), &grp, |b, g| {
            b.iter(|| enumerate_abelian_maps(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn subgroups(c: &mut Criterion) {
    let s5 = build_group("S:5").unwrap();
    let maps = enumerate_abelian_maps(&s5).unwrap();
    c.bench_function("build_n/S:5", |b| b.iter(|| build_n(black_box(&maps[1])).unwrap()));
    let d8 = build_group("D:8").unwrap();
    c.bench_function("classify/D:8", |b| b.iter(|| classify_group(black_box(&d8)).unwrap()));
}

fn braid(c: &mut Criterion) {
    let s5 = build_group("S:5").unwrap();
    let maps = enumerate_abelian_maps(&s5).unwrap();
    let table = closed_form(&maps[1], MapSolution::R1).unwrap();
    let mut group = c.benchmark_group("braid");
    group.sample_size(10);
    group.bench_function("S:5", |b| b.iter(|| black_box(&table).satisfies_braid()));
    group.finish();
}

criterion_group!(benches, enumeration, subgroups, braid);
criterion_main!(benches);
