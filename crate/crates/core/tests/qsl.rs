use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qfun_core::coeffring::LaurentPoly;
use qfun_core::ncalg::{Poly, Tensor, Word};
use qfun_core::qmatrix::{MatrixAlgebra, MatrixOrder};
use qfun_core::qsl::{
    antipode_convention, convention_holds, AntipodeConvention, BorelAlgebra, BorelSign, GLAlgebra, GLElement, SLAlgebra,
    SlStrategy,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type L = LaurentPoly;
type Sl = SLAlgebra<L>;

fn q() -> L {
    L::q()
}

fn qinv() -> L {
    L::q_pow(-1)
}

fn word(a: &Sl, gens: &[(usize, usize)]) -> Poly<L> {
    Poly::word(Word(gens.iter().map(|&(i, j)| a.letter(i, j)).collect()))
}

fn prod(a: &Sl, gens: &[(usize, usize)]) -> Poly<L> {
    let mut p = Poly::one();
    for &(i, j) in gens {
        p = a.mul(&p, &a.x(i, j)).unwrap();
    }
    p
}

#[test]
fn diagonal_reduction_n1() {
    let a = Sl::new(1, SlStrategy::Diagonal74).unwrap();
    let got = a.sl_reduce(&a.base().nf(&word(&a, &[(1, 1), (2, 2)])).unwrap()).unwrap();
    let want = Poly::one().plus(&prod(&a, &[(1, 2), (2, 1)]).scale(&q()));
    assert_eq!(got, want);
    assert_eq!(a.nf(&word(&a, &[(1, 1), (1, 2)])).unwrap(), word(&a, &[(1, 1), (1, 2)]));
}

#[test]
fn antidiagonal_reduction_n1() {
    let a = Sl::new(1, SlStrategy::Antidiag73).unwrap();
    let got = a.nf(&word(&a, &[(1, 2), (2, 1)])).unwrap();
    let want = word(&a, &[(1, 1), (2, 2)]).minus(&Poly::one()).scale(&qinv());
    assert_eq!(got, want);
}

#[test]
fn det_is_one() {
    for n in 1..=2 {
        for s in [SlStrategy::Diagonal74, SlStrategy::Antidiag73] {
            let a = Sl::new(n, s).unwrap();
            assert_eq!(a.nf(&a.base().det_q().unwrap()).unwrap(), Poly::one(), "n={n} {s:?}");
        }
    }
}

#[test]
fn antipode_convention_is_locked_by_axiom() {
    assert_eq!(antipode_convention(), AntipodeConvention::IMinusJ);
    assert!(convention_holds(AntipodeConvention::IMinusJ).unwrap());
    assert!(!convention_holds(AntipodeConvention::JMinusI).unwrap());
}

#[test]
fn antipode_examples_n1() {
    let a = Sl::new(1, SlStrategy::Diagonal74).unwrap();
    assert_eq!(a.antipode(&a.x(1, 1)).unwrap(), a.x(2, 2));
    assert_eq!(a.antipode(&Poly::one()).unwrap(), Poly::one());
    assert_eq!(a.antipode(&a.x(1, 2)).unwrap(), a.x(1, 2).scale(&qinv().neg_ref()));
    let (l, r) = a.antipode_axiom(1, 2).unwrap();
    assert!(l.is_zero() && r.is_zero());
}

fn check_hopf(a: &Sl) {
    let s = a.spec().as_ref();
    let m = a.n() + 1;
    for i in 1..=m {
        for j in 1..=m {
            let (l, r) = a.antipode_axiom(i, j).unwrap();
            let eps = if i == j { Poly::one() } else { Poly::zero() };
            assert_eq!(l, eps, "left antipode axiom at ({i},{j})");
            assert_eq!(r, eps, "right antipode axiom at ({i},{j})");
            let x = a.x(i, j);
            let d = a.coproduct(&x).unwrap();
            let left = d.expand_factor(0, 2, |w| a.coproduct(&Poly::word(w.clone()))).unwrap();
            let right = d.expand_factor(1, 2, |w| a.coproduct(&Poly::word(w.clone()))).unwrap();
            assert_eq!(left.normalize(&[s, s, s]).unwrap(), right.normalize(&[s, s, s]).unwrap());
            let mut lc = Poly::zero();
            let mut rc = Poly::zero();
            for (k, c) in d.iter() {
                lc.add_scaled(&Poly::word(k[1].clone()), &c.mul_ref(&a.counit(&Poly::word(k[0].clone()))));
                rc.add_scaled(&Poly::word(k[0].clone()), &c.mul_ref(&a.counit(&Poly::word(k[1].clone()))));
            }
            assert_eq!(lc, x);
            assert_eq!(rc, x);
        }
    }
}

#[test]
fn hopf_axioms_sl2() {
    check_hopf(&Sl::new(1, SlStrategy::Diagonal74).unwrap());
    check_hopf(&Sl::new(1, SlStrategy::Antidiag73).unwrap());
}

#[test]
fn hopf_axioms_sl3() {
    check_hopf(&Sl::new(2, SlStrategy::Diagonal74).unwrap());
    check_hopf(&Sl::new(2, SlStrategy::Antidiag73).unwrap());
}

#[test]
fn coproduct_and_counit_respect_det_relation() {
    for s in [SlStrategy::Diagonal74, SlStrategy::Antidiag73] {
        let a = Sl::new(2, s).unwrap();
        let det = a.base().det_q().unwrap();
        // det was computed in the matrix algebra; read it in SL via words
        let d = a.coproduct(&det).unwrap();
        assert_eq!(d, Tensor::unit(2));
        assert!(a.counit(&det).is_one());
    }
}

#[test]
fn pbw_small_degree() {
    let a = Sl::new(1, SlStrategy::Diagonal74).unwrap();
    let basis = a.pbw_basis_sl(1);
    assert_eq!(basis.len(), 5);
    assert!(basis.contains(&Word::empty()));
}

// Graded Hilbert function of k[x_ij] / (det) by rank of the ideal piece,
// computed with exact rational elimination.
fn commutative_hilbert(m: usize, degree: usize) -> Vec<usize> {
    let vars = m * m;
    let monomials = |d: usize| -> Vec<Vec<usize>> {
        fn rec(v: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == v - 1 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for k in 0..=left {
                cur.push(k);
                rec(v, left - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(vars, d, &mut Vec::new(), &mut out);
        out
    };
    // commutative determinant as exponent vectors with signs
    let mut det: Vec<(Vec<usize>, i64)> = Vec::new();
    let perms = {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(k - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, k - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(m)
    };
    for p in perms {
        let mut e = vec![0; vars];
        for (i, &j) in p.iter().enumerate() {
            e[i * m + j] += 1;
        }
        let inv = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
        det.push((e, if inv % 2 == 0 { 1 } else { -1 }));
    }
    let mut out = Vec::new();
    for d in 0..=degree {
        let mons = monomials(d);
        if d < m {
            out.push(mons.len());
            continue;
        }
        let col: HashMap<Vec<usize>, usize> = mons.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        let mut rows: Vec<BTreeMap<usize, BigRational>> = Vec::new();
        for mm in monomials(d - m) {
            let mut row = BTreeMap::new();
            for (e, s) in &det {
                let v: Vec<usize> = e.iter().zip(&mm).map(|(a, b)| a + b).collect();
                row.insert(col[&v], BigRational::from_integer(BigInt::from(*s)));
            }
            rows.push(row);
        }
        out.push(mons.len() - rank(rows));
    }
    out
}

fn rank(rows: Vec<BTreeMap<usize, BigRational>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&lead, c)) = row.iter().next() else { break };
            let c = c.clone();
            match pivots.get(&lead) {
                Some(p) => {
                    for (k, v) in p {
                        let e = row.entry(*k).or_insert_with(BigRational::zero);
                        *e -= v * &c;
                        if e.is_zero() {
                            row.remove(k);
                        }
                    }
                }
                None => {
                    let inv = BigRational::one() / c;
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[test]
fn pbw_counts_match_commutative_hilbert_function() {
    let a = Sl::new(1, SlStrategy::Diagonal74).unwrap();
    assert_eq!(a.pbw_counts(5), commutative_hilbert(2, 5));
    let b = Sl::new(2, SlStrategy::Diagonal74).unwrap();
    assert_eq!(b.pbw_counts(4), commutative_hilbert(3, 4));
}

#[test]
fn both_monomial_sets_have_equal_counts() {
    for n in 1..=3 {
        let d = Sl::new(n, SlStrategy::Diagonal74).unwrap();
        let a = Sl::new(n, SlStrategy::Antidiag73).unwrap();
        let deg = if n == 3 { 3 } else { 5 };
        assert_eq!(d.pbw_counts(deg), a.pbw_counts(deg), "n={n}");
    }
}

#[test]
fn reduced_products_are_canonical_and_path_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in [SlStrategy::Diagonal74, SlStrategy::Antidiag73] {
        let a = Sl::new(2, s).unwrap();
        let samples = [
            vec![(3, 3), (2, 2), (1, 1)],
            vec![(3, 1), (2, 2), (1, 3), (1, 1)],
            vec![(1, 1), (2, 2), (3, 3), (1, 3), (2, 2), (3, 1)],
            vec![(2, 3), (3, 2), (1, 1), (1, 2), (2, 1), (3, 3)],
        ];
        for g in samples {
            let raw = Poly::word(Word(g.iter().map(|&(i, j)| a.letter(i, j)).collect()));
            let nf = a.nf(&raw).unwrap();
            for (w, _) in nf.iter() {
                assert!(a.is_canonical_word(w), "{s:?}: {}", a.spec().fmt_word(w));
                assert!(w.is_ordered());
            }
            assert_eq!(a.nf(&nf).unwrap(), nf);
            for _ in 0..3 {
                assert_eq!(a.spec().nf_random_path(&raw, &mut rng).unwrap(), nf);
            }
        }
    }
}

#[test]
fn strategies_agree_after_transport() {
    let d = Sl::new(2, SlStrategy::Diagonal74).unwrap();
    let a = Sl::new(2, SlStrategy::Antidiag73).unwrap();
    let x = prod(&d, &[(1, 1), (2, 2), (3, 3), (1, 2)]);
    let there = a.import(&x, d.spec()).unwrap();
    let back = d.import(&there, a.spec()).unwrap();
    assert_eq!(back, x);
}

#[test]
fn gl_det_inverse_examples() {
    let g = GLAlgebra::<L>::new(1, MatrixOrder::Lex).unwrap();
    let one_inv = g.det_inverse();
    let det_as_body = g.element(&g.base().det_q().unwrap()).unwrap();
    let p = g.mul(&one_inv, &det_as_body).unwrap();
    assert_eq!(p, GLElement { body: Poly::one(), detpow: 0 });
    let d = g.coproduct(&one_inv).unwrap();
    assert_eq!(d.body, Tensor::unit(2));
    assert_eq!(d.detpow, -1);
    let s = g.antipode(&g.x(1, 1)).unwrap();
    assert_eq!(s, GLElement { body: g.base().x(2, 2), detpow: -1 });
    assert!(g.equal(&g.gl_inverse_det(&det_as_body, 1), &GLElement { body: Poly::one(), detpow: 0 }).unwrap());
}

#[test]
fn gl_antipode_axiom() {
    for n in 1..=2 {
        let g = GLAlgebra::<L>::new(n, MatrixOrder::Lex).unwrap();
        for i in 1..=n + 1 {
            for j in 1..=n + 1 {
                let (l, r) = g.antipode_axiom(i, j).unwrap();
                let eps = GLElement {
                    body: if i == j { Poly::one() } else { Poly::zero() },
                    detpow: 0,
                };
                assert!(g.equal(&l, &eps).unwrap(), "GL left ({i},{j})");
                assert!(g.equal(&r, &eps).unwrap(), "GL right ({i},{j})");
            }
        }
        let s_det = g.antipode(&g.det()).unwrap();
        assert!(g.equal(&s_det, &g.det_inverse()).unwrap());
    }
}

#[test]
fn projection_examples() {
    let g = GLAlgebra::<L>::new(1, MatrixOrder::Lex).unwrap();
    let sl = Sl::new(1, SlStrategy::Diagonal74).unwrap();
    let det = g.element(&g.base().det_q().unwrap()).unwrap();
    assert_eq!(g.pi_project(&det, &sl).unwrap(), Poly::one());
    assert_eq!(g.pi_project(&g.x(1, 2), &sl).unwrap(), sl.x(1, 2));
    assert_eq!(g.pi_project(&g.det_inverse(), &sl).unwrap(), Poly::one());
    // (π⊗π)Δ = Δπ on x12
    let d = g.coproduct(&g.x(1, 2)).unwrap();
    let mut lhs = Tensor::zero(2);
    for (k, c) in d.body.iter() {
        let a = g.pi_project(&GLElement { body: Poly::word(k[0].clone()), detpow: 0 }, &sl).unwrap();
        let b = g.pi_project(&GLElement { body: Poly::word(k[1].clone()), detpow: 0 }, &sl).unwrap();
        lhs.add_scaled(&Tensor::outer(&a, &b), c);
    }
    assert_eq!(lhs, sl.coproduct(&sl.x(1, 2)).unwrap());
}

#[test]
fn projection_intertwines_antipodes() {
    for n in 1..=2 {
        let g = GLAlgebra::<L>::new(n, MatrixOrder::Lex).unwrap();
        let sl = Sl::new(n, SlStrategy::Diagonal74).unwrap();
        for i in 1..=n + 1 {
            for j in 1..=n + 1 {
                let l = g.pi_project(&g.antipode(&g.x(i, j)).unwrap(), &sl).unwrap();
                let r = sl.antipode(&sl.x(i, j)).unwrap();
                assert_eq!(l, r, "({i},{j})");
            }
        }
    }
}

#[test]
fn borel_examples() {
    let sl = Sl::new(1, SlStrategy::Diagonal74).unwrap();
    let bp = BorelAlgebra::<L>::new(1, BorelSign::Plus).unwrap();
    assert!(bp.borel_quotient(&sl.x(2, 1), sl.spec()).unwrap().is_zero());
    assert_eq!(bp.borel_quotient(&sl.x(1, 1), sl.spec()).unwrap(), bp.x(1, 1).unwrap());
    let diag = bp.mul(&bp.x(1, 1).unwrap(), &bp.x(2, 2).unwrap()).unwrap();
    assert_eq!(diag, Poly::one());
    assert!(bp.x(2, 1).is_err());
}

#[test]
fn borel_quotients_are_algebra_and_coalgebra_maps() {
    for n in 1..=2 {
        let m = MatrixAlgebra::<L>::new(n, MatrixOrder::Lex).unwrap();
        let sl = Sl::new(n, SlStrategy::Diagonal74).unwrap();
        for sign in [BorelSign::Plus, BorelSign::Minus] {
            let b = BorelAlgebra::<L>::new(n, sign).unwrap();
            let rho = |p: &Poly<L>| b.borel_quotient(p, m.spec()).unwrap();
            for r in m.spec().rules() {
                let lhs = Poly::word(Word(vec![r.lhs.0, r.lhs.1]));
                assert_eq!(b.nf(&rho(&lhs)).unwrap(), b.nf(&rho(&r.rhs)).unwrap());
            }
            assert_eq!(rho(&m.det_q().unwrap()), Poly::one());
            let bs = b.spec().as_ref();
            for i in 1..=n + 1 {
                for j in 1..=n + 1 {
                    let img = rho(&m.x(i, j));
                    let via_m = m.coproduct(&m.x(i, j)).unwrap();
                    let mut pushed = Tensor::zero(2);
                    for (k, c) in via_m.iter() {
                        let a = rho(&Poly::word(k[0].clone()));
                        let bb = rho(&Poly::word(k[1].clone()));
                        pushed.add_scaled(&Tensor::outer(&a, &bb), c);
                    }
                    assert_eq!(pushed.normalize(&[bs, bs]).unwrap(), b.coproduct(&img).unwrap());
                    assert_eq!(b.counit(&img), m.counit(&m.x(i, j)));
                    // antipode axiom in the quotient
                    if sign.keeps(i, j) {
                        let d = b.coproduct(&img).unwrap();
                        let mut acc = Poly::zero();
                        for (k, c) in d.iter() {
                            let s = b.antipode(&Poly::word(k[0].clone()), &sl).unwrap();
                            acc.add_scaled(&b.mul(&s, &Poly::word(k[1].clone())).unwrap(), c);
                        }
                        let eps = if i == j { Poly::one() } else { Poly::zero() };
                        assert_eq!(acc, eps);
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sl_reduce_idempotent_and_path_independent(g in prop::collection::vec((1usize..4, 1usize..4), 1..7), seed in 0u64..1000,
                                                 diag in any::<bool>()) {
        let s = if diag { SlStrategy::Diagonal74 } else { SlStrategy::Antidiag73 };
        let a = Sl::new(2, s).unwrap();
        let raw = Poly::word(Word(g.iter().map(|&(i, j)| a.letter(i, j)).collect()));
        let nf = a.nf(&raw).unwrap();
        prop_assert_eq!(a.sl_reduce(&nf).unwrap(), nf.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(a.spec().nf_random_path(&raw, &mut rng).unwrap(), nf.clone());
        for (w, _) in nf.iter() {
            prop_assert!(a.is_canonical_word(w));
        }
    }
}
