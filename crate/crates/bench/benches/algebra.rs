use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qfun_core::intform::{Group, IntForm};
use qfun_core::ncalg::Poly;
use qfun_core::qmatrix::{MatrixAlgebra, MatrixOrder};
use qfun_core::qsl::{SLAlgebra, SlStrategy};
use qfun_core::uq::UqAlgebra;
use qfun_core::LaurentPoly;

type L = LaurentPoly;

fn matrix(c: &mut Criterion) {
    let m = MatrixAlgebra::<L>::new(2, MatrixOrder::Lex).unwrap();
    // every generator once, in reverse order: the worst case for straightening
    let mut gens = Vec::new();
    for i in (1..=3).rev() {
        for j in (1..=3).rev() {
            gens.push(m.x(i, j));
        }
    }
    c.bench_function("M(3) normal form of reversed word", |b| {
        b.iter(|| gens.iter().fold(Poly::one(), |acc, g| m.mul(&acc, black_box(g)).unwrap()))
    });
    for n in [2, 3] {
        let m = MatrixAlgebra::<L>::new(n, MatrixOrder::Lex).unwrap();
        c.bench_function(&format!("det_q of M({})", n + 1), |b| b.iter(|| m.det_q().unwrap()));
    }
}

fn sl(c: &mut Criterion) {
    for strategy in [SlStrategy::Diagonal74, SlStrategy::Antidiag73] {
        let s = SLAlgebra::<L>::new(2, strategy).unwrap();
        let w = [s.x(3, 3), s.x(2, 2), s.x(1, 1), s.x(3, 3), s.x(2, 2), s.x(1, 1)];
        c.bench_function(&format!("SL(3) reduce diagonal word, {}", strategy.name()), |b| {
            b.iter(|| w.iter().fold(Poly::one(), |acc, g| s.mul(&acc, black_box(g)).unwrap()))
        });
    }
}

fn uq(c: &mut Criterion) {
    let u = UqAlgebra::new(2).unwrap();
    let a = u.mul_all(&[u.f(1), u.f(2), u.e(1), u.e(2)]).unwrap();
    let b = u.mul_all(&[u.e(2), u.e(1), u.f(2), u.f(1)]).unwrap();
    c.bench_function("Uq(gl3) product of degree-4 monomials", |bch| bch.iter(|| u.mul(black_box(&a), black_box(&b)).unwrap()));
}

fn intform(c: &mut Criterion) {
    c.bench_function("lift psi[1] psi[2] psi[3] into SL(3)", |b| {
        b.iter(|| {
            // fresh form each time: lifts are memoized per instance
            let f = IntForm::new(2, Group::SL).unwrap();
            let p = f.formal_spec().mul_all(&[f.psi(1), f.psi(2), f.psi(3)]).unwrap();
            f.lift(&p).unwrap()
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = matrix, sl, uq, intform
}
criterion_main!(benches);
