use a2ext_bench::{basis, module};
use a2ext_core::cobar::cobar_ext;
use a2ext_core::may::may_run;
use a2ext_core::steenrod::milnor_product;
use a2ext_core::tmf::{a1_smash_dual, b30_4_checklist, zero_group_checklist};
use a2ext_core::{Budget, Resolution, SubalgebraProfile};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

const A2: SubalgebraProfile = SubalgebraProfile::A(2);

fn products(c: &mut Criterion) {
    let b = basis(2);
    c.bench_function("milnor products, all of A(2) x A(2)", |bench| {
        bench.iter(|| {
            let mut terms = 0;
            for x in &b {
                for y in &b {
                    terms += milnor_product(x, y, A2).unwrap().len();
                }
            }
            black_box(terms)
        })
    });
}

fn resolutions(c: &mut Criterion) {
    let mut g = c.benchmark_group("resolve over A(2)");
    g.sample_size(10);
    g.bench_function("S0, s <= 10, t <= 40", |bench| {
        let m = module("S0");
        bench.iter(|| Resolution::resolve(black_box(&m), A2, 10, 40).unwrap())
    });
    g.bench_function("A1-00, s <= 12, t <= 52", |bench| {
        let m = module("A1-00");
        bench.iter(|| Resolution::resolve(black_box(&m), A2, 12, 52).unwrap())
    });
    g.bench_function("A1-00 * DA1-00, s <= 7, t <= 31", |bench| {
        let x = a1_smash_dual("A1-00").unwrap();
        bench.iter(|| Resolution::resolve(black_box(&x), A2, 7, 31).unwrap())
    });
    g.finish();
}

fn oracles(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracles");
    g.sample_size(10);
    g.bench_function("cobar, A1-00 over A(2), t <= 12", |bench| {
        let m = module("A1-00");
        bench.iter(|| cobar_ext(black_box(&m), A2, 13, 12).unwrap())
    });
    g.bench_function("May E2..E5, t <= 60", |bench| {
        bench.iter(|| may_run(black_box(60)).unwrap())
    });
    g.bench_function("zero groups, A1-00", |bench| {
        let x = a1_smash_dual("A1-00").unwrap();
        let list = b30_4_checklist();
        bench.iter(|| zero_group_checklist(black_box(&x), &list, &Budget::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, products, resolutions, oracles);
criterion_main!(benches);
