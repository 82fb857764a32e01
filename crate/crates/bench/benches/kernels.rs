use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use hyperell_bench::*;
use hyperell_core::integrate::{elliptic_divisors, hermite_reduce, hyperelliptic_to_elliptic};
use hyperell_core::morphisms::{elliptic_factors, EllipticMorphism};
use hyperell_core::poly::RationalFunction;
use hyperell_core::text::parse_poly;
use hyperell_core::zeta::{count_points, rank_bound, HyperellipticCurve};
use hyperell_core::NumberField;

fn zeta(c: &mut Criterion) {
    let x7 = HyperellipticCurve::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    c.bench_function("count_points x^7-1 over F_29^3", |b| {
        b.iter(|| count_points(black_box(&x7), 29, 3).unwrap())
    });
    c.bench_function("rank_bound x^7-1 at 29", |b| {
        b.iter(|| rank_bound(black_box(&x7), 29).unwrap())
    });
}

fn integrate(c: &mut Criterion) {
    let curve = genus_two_curve();
    let l = genus_two_morphisms();
    let flagship = genus_two_integrand("(6*x-17)^2");
    c.bench_function("hermite_reduce 1/((6x-17)^2 y)", |b| {
        b.iter(|| hermite_reduce(black_box(&flagship), &l).unwrap())
    });
    c.bench_function("elliptic_divisors genus 2", |b| {
        b.iter(|| elliptic_divisors(black_box(&curve), &l).unwrap())
    });

    let q = NumberField::rationals();
    let c1 = HyperellipticCurve::new(parse_poly("x*(x-1)*(x-2)", "x", &q).unwrap()).unwrap();
    let id = EllipticMorphism::new(
        q.from_int(2),
        RationalFunction::x(&q.zero()),
        RationalFunction::one(&q.zero()),
    );
    let i = hyperell_core::integrate::HyperellipticIntegrand::new(
        parse_poly("x^2+1", "x", &q).unwrap(),
        parse_poly("(x-3)^2*(x^2-7)", "x", &q).unwrap(),
        c1,
    )
    .unwrap();
    c.bench_function("hyperelliptic_to_elliptic genus 1", |b| {
        b.iter(|| hyperelliptic_to_elliptic(black_box(&i), std::slice::from_ref(&id)).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let curve = genus_two_curve();
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("elliptic_factors genus 2, m = 2", |b| {
        b.iter(|| elliptic_factors(black_box(&curve), 2, Some(2)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, zeta, integrate, search);
criterion_main!(benches);
