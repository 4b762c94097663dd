use std::hint::black_box;

use chainpoly_bench::{koch_chain, koch_poly};
use chainpoly_core::chain::{enumerate_chains, visibility};
use chainpoly_core::oracle::{count_triangulations_points, oracle_tripoly, realize};
use chainpoly_core::tripoly::{vee_combine, wedge_combine, Evaluator};
use chainpoly_core::BigUint;
use chainpoly_core::ExtNum;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn combine(c: &mut Criterion) {
    let mut g = c.benchmark_group("vee_combine");
    for s in [6u32, 8, 10] {
        let p = koch_poly::<ExtNum>(s);
        g.bench_with_input(BenchmarkId::new("float", 1u32 << s), &p, |b, p| {
            b.iter(|| vee_combine(black_box(p), black_box(p)).unwrap())
        });
        let q = koch_poly::<BigUint>(s);
        g.bench_with_input(BenchmarkId::new("exact", 1u32 << s), &q, |b, q| {
            b.iter(|| vee_combine(black_box(q), black_box(q)).unwrap())
        });
    }
    g.finish();

    let p = koch_poly::<ExtNum>(10);
    c.bench_function("wedge_combine/float/1024", |b| {
        b.iter(|| wedge_combine(black_box(&p), black_box(&p)).unwrap())
    });
}

fn koch_eval(c: &mut Criterion) {
    let mut g = c.benchmark_group("koch_eval");
    g.sample_size(10);
    for s in [8u32, 10, 11] {
        let f = koch_chain(s);
        g.bench_with_input(BenchmarkId::new("float", s), &f, |b, f| {
            b.iter(|| Evaluator::<ExtNum>::new().eval(black_box(f)).unwrap())
        });
    }
    let f = koch_chain(8);
    g.bench_function("exact/8", |b| {
        b.iter(|| Evaluator::<BigUint>::new().eval(black_box(&f)).unwrap())
    });
    g.finish();
}

fn oracles(c: &mut Criterion) {
    let chains: Vec<_> = enumerate_chains(7).unwrap().collect();
    let tris: Vec<_> = chains.iter().map(|f| visibility(f).unwrap()).collect();
    c.bench_function("oracle_tripoly/all n=7", |b| {
        b.iter(|| {
            for v in &tris {
                black_box(oracle_tripoly(v).unwrap());
            }
        })
    });

    let pts = realize(&koch_chain(3)).unwrap();
    c.bench_function("count_triangulations_points/koch3", |b| {
        b.iter(|| count_triangulations_points(black_box(&pts)).unwrap())
    });
    let f = koch_chain(4);
    c.bench_function("realize/koch4", |b| {
        b.iter(|| realize(black_box(&f)).unwrap())
    });
}

criterion_group!(benches, combine, koch_eval, oracles);
criterion_main!(benches);
