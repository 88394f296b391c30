use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use hopfact::factorization::{derive_matched_pair, find_exact_factorizations};
use hopfact::fusion::enumerate_triples;
use hopfact::hopf::{
    build_bicrossed_product, drinfeld_double, group_algebra, verify_hopf_axioms, verify_qt,
};
use hopfact::obstruction::run_pipeline;
use hopfact::rep::{crossed_product_irreps, decompose_semisimple, double_irreps};
use hopfact::{CocyclePair, FiniteGroup, ThreeCocycle};

fn groups(c: &mut Criterion) {
    let mut g = c.benchmark_group("groups");
    for n in [4usize, 5, 6] {
        g.bench_with_input(
            BenchmarkId::new("symmetric closure + classes", n),
            &n,
            |b, &n| {
                b.iter(|| {
                    let s = FiniteGroup::symmetric(n);
                    black_box(s.conjugacy_classes().len())
                })
            },
        );
    }
    let s4 = FiniteGroup::symmetric(4);
    g.bench_function("S4 exact factorizations", |b| {
        b.iter(|| black_box(find_exact_factorizations(&s4, true).len()))
    });
    g.finish();
}

fn hopf(c: &mut Criterion) {
    let mut g = c.benchmark_group("hopf");
    g.sample_size(10);
    let s4 = FiniteGroup::symmetric(4);
    let fact = find_exact_factorizations(&s4, true)
        .into_iter()
        .find(|f| f.f.order() == 6 && f.gamma.order() == 4)
        .unwrap();
    let mp = derive_matched_pair(&s4, &fact).unwrap();
    let cp = CocyclePair::trivial(&mp);
    let h = build_bicrossed_product("H", &mp, &cp).unwrap();
    g.bench_function("build k^C4#kS3", |b| {
        b.iter(|| black_box(build_bicrossed_product("H", &mp, &cp).unwrap().dim()))
    });
    g.bench_function("axioms k^C4#kS3", |b| {
        b.iter(|| black_box(verify_hopf_axioms(&h).passed()))
    });
    let dh = drinfeld_double(&group_algebra(&FiniteGroup::symmetric(3)));
    let r = dh.rmatrix().unwrap().clone();
    g.bench_function("QT D(kS3)", |b| {
        b.iter(|| black_box(verify_qt(&dh, &r).passed()))
    });
    g.finish();
}

fn representations(c: &mut Criterion) {
    let mut g = c.benchmark_group("representations");
    g.sample_size(10);
    let dh = drinfeld_double(&group_algebra(&FiniteGroup::symmetric(3)));
    g.bench_function("decompose D(kS3)", |b| {
        b.iter(|| black_box(decompose_semisimple(&dh, 0).unwrap().entries.len()))
    });
    let s5 = FiniteGroup::symmetric(5);
    let w = ThreeCocycle::trivial(&s5);
    g.bench_function("double irreps S5", |b| {
        b.iter(|| black_box(double_irreps(&s5, &w, 0).unwrap().objects.len()))
    });
    let fact = find_exact_factorizations(&s5, true)
        .into_iter()
        .find(|f| f.f.order() == 24 && f.gamma.order() == 5)
        .unwrap();
    let mp = derive_matched_pair(&s5, &fact).unwrap();
    let cp = CocyclePair::trivial(&mp);
    g.bench_function("crossed product irreps k^C5#kS4", |b| {
        b.iter(|| black_box(crossed_product_irreps(&mp, &cp, 0).unwrap().entries.len()))
    });
    g.finish();
}

fn fusion_and_pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("fusion");
    g.sample_size(10);
    for s in [FiniteGroup::symmetric(4), FiniteGroup::symmetric(5)] {
        let w = ThreeCocycle::trivial(&s);
        g.bench_function(format!("triples {}", s.name()), |b| {
            b.iter(|| black_box(enumerate_triples(&s, &w).unwrap().len()))
        });
    }
    let s5 = FiniteGroup::symmetric(5);
    let w = ThreeCocycle::trivial(&s5);
    let fact = find_exact_factorizations(&s5, true)
        .into_iter()
        .find(|f| f.f.order() == 24 && f.gamma.order() == 5)
        .unwrap();
    g.bench_function("pipeline S5", |b| {
        b.iter(|| {
            black_box(
                run_pipeline(&s5, &fact.f, &fact.gamma, &w, 0)
                    .unwrap()
                    .verdict,
            )
        })
    });
    g.finish();
}

criterion_group!(benches, groups, hopf, representations, fusion_and_pipeline);
criterion_main!(benches);
