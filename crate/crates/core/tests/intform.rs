use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qfun_core::classical::{reference_cobracket, ClassicalGen, PBWElement, PBWTensor};
use qfun_core::coeffring::{LaurentPoly, RatFunc};
use qfun_core::intform::{
    check_span_identities, hopf_closure, poisson_cobracket, specialize_phi, verify_hopf_catalog, verify_relation_catalog,
    Catalog, Divisibility, Form, Group, IntForm, IntFormGen, RelationStatus, Specializer, ToralChoice,
};
use qfun_core::ncalg::Poly;
use qfun_core::qsl::{SLAlgebra, SlStrategy};
use qfun_core::Error;

type P = Poly<RatFunc>;

fn qm1() -> RatFunc {
    RatFunc::from_laurent(LaurentPoly::q_minus_1())
}

fn rat(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

fn sl(n: usize) -> IntForm {
    IntForm::new(n, Group::SL).unwrap()
}

fn status<'a>(c: &'a Catalog, id: &str, idx: &[usize]) -> &'a RelationStatus {
    &c.records.iter().find(|r| r.id == id && r.indices == idx).unwrap_or_else(|| panic!("no record {id} {idx:?}")).status
}

fn variant(s: &RelationStatus) -> &str {
    match s {
        RelationStatus::Corrected { variant } => variant,
        other => panic!("expected a corrected record, got {other:?}"),
    }
}

#[test]
fn lifts_match_the_definitions() {
    let f = sl(1);
    let a = SLAlgebra::<RatFunc>::new(1, SlStrategy::Diagonal74).unwrap();
    let qq = RatFunc::from_laurent(LaurentPoly::q_minus_qinv());
    assert_eq!(f.lift(&f.r(1, 2)).unwrap(), a.x(1, 2).scale(&qq.inverse().unwrap()));
    assert_eq!(f.lift(&f.r(2, 2)).unwrap(), a.x(2, 2));
    let chi1 = a.x(1, 1).minus(&P::one()).scale(&qm1().inverse().unwrap());
    assert_eq!(f.lift(&f.chi(1)).unwrap(), chi1);
    assert_eq!(f.lift(&f.phi(1)).unwrap(), f.lift(&f.chi(1).minus(&f.chi(2))).unwrap());
    assert!(matches!(f.gen(IntFormGen::Phi(2)), Err(Error::UnknownGenerator(_))));
    assert!(matches!(f.gen(IntFormGen::Chi(3)), Err(Error::UnknownGenerator(_))));
}

#[test]
fn n1_relation_catalogs_hold() {
    let f = sl(1);
    for form in Form::all() {
        let c = verify_relation_catalog(&f, form).unwrap();
        assert!(c.all_hold(), "{}: {:?}", form.name(), c.failed().map(|r| (&r.id, &r.indices)).collect::<Vec<_>>());
    }
    let q = verify_relation_catalog(&f, Form::Q).unwrap();
    assert_eq!(status(&q, "phi.1", &[1]), &RelationStatus::Verified);
    assert_eq!(status(&q, "phi.13", &[1]), &RelationStatus::Verified);
}

#[test]
fn n2_catalog_errata() {
    let f = sl(2);
    let q = verify_relation_catalog(&f, Form::Q).unwrap();
    // the second "j < i" relation for r_{j,i+1} holds on j > i+1 only
    assert!(matches!(status(&q, "phi.8", &[2, 1]), RelationStatus::Failed { .. }));
    assert!(variant(status(&q, "phi.8", &[1, 3])).contains("j > i+1"));
    assert_eq!(q.failed().filter(|r| r.id != "phi.8").count(), 0);
    assert!(variant(status(&q, "phi.17", &[2, 1])).contains("antisymmetry"));
    assert_eq!(status(&q, "phi.17", &[1, 2]), &RelationStatus::Verified);

    let p = verify_relation_catalog(&f, Form::P).unwrap();
    assert!(p.all_hold());
    assert!(variant(status(&p, "psi.2", &[1, 1, 2])).starts_with("adds"));
    assert!(variant(status(&p, "psi.2", &[2, 2, 2])).contains("[s < j∧k]"));
    assert_eq!(status(&p, "psi.2", &[1, 2, 3]), &RelationStatus::Verified);

    let x = verify_relation_catalog(&f, Form::Plain).unwrap();
    assert!(x.all_hold());
    assert!(variant(status(&x, "chi.4", &[1, 2])).contains("r_ji r_ii"));
    assert_eq!(status(&x, "chi.3", &[2, 1]), &RelationStatus::Verified);
    assert!(variant(status(&x, "chi.11", &[])).contains("minus"));
}

#[test]
fn hopf_catalogs() {
    for n in [1, 2] {
        let f = sl(n);
        for form in Form::all() {
            let c = verify_hopf_catalog(&f, form).unwrap();
            assert!(c.all_hold(), "n={n} {}", form.name());
        }
    }
    let f = sl(1);
    let x = verify_hopf_catalog(&f, Form::Plain).unwrap();
    assert_eq!(status(&x, "r.delta", &[1, 2]), &RelationStatus::Verified);
    assert!(variant(status(&x, "chi.delta", &[1])).contains("χ_i ⊗ 1"));
    assert!(variant(status(&x, "r.antipode", &[1, 2])).contains("(-q)^(i-j)"));
    let p = verify_hopf_catalog(&f, Form::P).unwrap();
    assert_eq!(status(&p, "psi.antipode", &[1]), &RelationStatus::Verified);
    let q = verify_hopf_catalog(&f, Form::Q).unwrap();
    assert_eq!(status(&q, "phi.counit", &[1]), &RelationStatus::Verified);
}

#[test]
fn divisibility_examples() {
    let f = sl(1);
    let a = SLAlgebra::<RatFunc>::new(1, SlStrategy::Diagonal74).unwrap();
    let rho12 = a.x(1, 2);
    match f.canonical_divisibility(&rho12.scale(&qm1())).unwrap() {
        Divisibility::Divisible(qt) => assert_eq!(qt, rho12),
        d => panic!("{d:?}"),
    }
    match f.canonical_divisibility(&rho12).unwrap() {
        Divisibility::NotDivisible { coeff, .. } => assert!(coeff.is_one()),
        d => panic!("{d:?}"),
    }
    // in the r/χ lattice ρ_11 - 1 = (q-1) χ_1, while ρ_11 = 1 + (q-1) χ_1 is not divisible
    match f.q_minus_1_divisibility(&a.x(1, 1).minus(&P::one())).unwrap() {
        Divisibility::Divisible(w) => assert_eq!(w, f.chi(1)),
        d => panic!("{d:?}"),
    }
    match f.q_minus_1_divisibility(&a.x(1, 1)).unwrap() {
        Divisibility::NotDivisible { witness, coeff } => {
            assert_eq!(witness, "1");
            assert!(coeff.is_one());
        }
        d => panic!("{d:?}"),
    }
    assert!(f.in_lattice(&f.lift(&f.r(1, 2)).unwrap()).unwrap());
}

#[test]
fn lattice_expansion_lifts_back() {
    let f = sl(2);
    let x = f.r(1, 3).concat_mul(&f.chi(2)).concat_mul(&f.r(2, 1));
    let a = f.lift(&x).unwrap();
    assert_eq!(f.lift(&f.lattice_expansion(&a).unwrap()).unwrap(), a);
}

#[test]
fn span_identities() {
    for n in [1, 2] {
        let ids = check_span_identities(&sl(n)).unwrap();
        assert!(ids.iter().all(|s| s.holds), "{ids:?}");
        assert_eq!(ids.len(), 3 * n + 3);
    }
}

#[test]
fn antipode_of_psi_is_minus_psi_mod_q_minus_1() {
    for n in [1, 2] {
        let f = sl(n);
        for i in 1..=n + 1 {
            let s = f.formal_antipode(&f.psi(i)).unwrap().plus(&f.psi(i));
            let w = f.congruence_certificate(&s).unwrap().expect("certificate");
            assert_eq!(f.lift(&w.scale(&qm1())).unwrap(), f.lift(&s).unwrap());
        }
    }
}

#[test]
fn no_certificate_for_nonzero_classical_limit() {
    let f = sl(1);
    assert!(f.congruence_certificate(&f.chi(1)).unwrap().is_none());
    assert!(f.congruence_certificate(&f.r(1, 2)).unwrap().is_none());
    assert!(f.congruence_certificate(&f.r(2, 2).minus(&P::one())).unwrap().is_some());
}

#[test]
fn specialization_examples() {
    let f = sl(2);
    let sp = Specializer::new(2, Group::SL, ToralChoice::Printed).unwrap();
    let lie = sp.lie().clone();
    let mono = |k: usize, c: i64| PBWElement::monomial(vec![k], rat(c));
    assert_eq!(specialize_phi(&f, &f.r(1, 2)).unwrap(), mono(lie.f(2, 1), -1));
    assert_eq!(specialize_phi(&f, &f.r(1, 1)).unwrap(), PBWElement::one());
    assert_eq!(specialize_phi(&f, &f.r(1, 3)).unwrap(), mono(lie.f(3, 1), 1));
    assert_eq!(specialize_phi(&f, &f.r(2, 1)).unwrap(), mono(lie.e(1, 2), 1));
    assert_eq!(specialize_phi(&f, &f.phi(2)).unwrap(), mono(lie.h(2), 1));
    let trace = (1..=3).fold(P::zero(), |a, i| a.plus(&f.chi(i)));
    assert!(sp.specialize(&f, &trace).unwrap().is_zero());
    let bad = f.r(1, 2).scale(&qm1().inverse().unwrap());
    assert!(matches!(sp.specialize(&f, &bad), Err(Error::OutOfForm(_))));
}

#[test]
fn verified_relations_specialize_to_zero() {
    for n in [1, 2] {
        let f = sl(n);
        let sp = Specializer::new(n, Group::SL, ToralChoice::Printed).unwrap();
        for form in Form::all() {
            for r in verify_relation_catalog(&f, form).unwrap().records {
                if let Some(id) = &r.identity {
                    let v = sp.specialize(&f, id).unwrap();
                    assert!(v.is_zero(), "{} {:?}: {}", r.id, r.indices, v.fmt_with(sp.lie()));
                }
            }
        }
    }
}

#[test]
fn cobracket_matches_the_classical_formulas() {
    let minus = -BigRational::one();
    for n in [1, 2] {
        let f = sl(n);
        let sp = Specializer::new(n, Group::SL, ToralChoice::Printed).unwrap();
        let lie = sp.lie().clone();
        for i in 1..=n {
            let want = reference_cobracket(&lie, ClassicalGen::F(i)).unwrap().scale(&minus);
            assert_eq!(poisson_cobracket(&f, &sp, &f.r(i, i + 1)).unwrap(), want);
            assert_eq!(poisson_cobracket(&f, &sp, &f.phi(i)).unwrap(), reference_cobracket(&lie, ClassicalGen::H(i)).unwrap());
            assert_eq!(poisson_cobracket(&f, &sp, &f.r(i + 1, i)).unwrap(), reference_cobracket(&lie, ClassicalGen::E(i)).unwrap());
        }
        assert!(poisson_cobracket(&f, &sp, &P::one()).unwrap().is_zero());
    }
}

#[test]
fn hopf_closure_of_generators() {
    for n in [1, 2] {
        for g in [Group::SL, Group::GL] {
            let recs = hopf_closure(&IntForm::new(n, g).unwrap()).unwrap();
            assert!(recs.iter().all(|r| r.holds()), "{recs:?}");
        }
    }
}

#[test]
fn gl_central_element() {
    let n = 1;
    let f = IntForm::new(n, Group::GL).unwrap();
    let printed = Specializer::new(n, Group::GL, ToralChoice::Printed).unwrap();
    let trace = Specializer::new(n, Group::GL, ToralChoice::Trace).unwrap();
    let lie = printed.lie().clone();
    let want = reference_cobracket(&lie, ClassicalGen::C).unwrap();
    // χ_{n+1} carries the displayed cobracket of c ...
    assert_eq!(poisson_cobracket(&f, &printed, &f.chi(n + 1)).unwrap(), want);
    // ... but is not central, so sending it to c breaks a relation
    let x = verify_relation_catalog(&f, Form::Plain).unwrap();
    let broken = x.records.iter().filter_map(|r| r.identity.as_ref()).any(|id| !printed.specialize(&f, id).unwrap().is_zero());
    assert!(broken);
    // the trace choice is an algebra map, and the trace has zero cobracket
    for form in Form::all() {
        for r in verify_relation_catalog(&f, form).unwrap().records {
            if let Some(id) = &r.identity {
                assert!(trace.specialize(&f, id).unwrap().is_zero(), "{} {:?}", r.id, r.indices);
            }
        }
    }
    let tr = f.chi(1).plus(&f.chi(2));
    assert_eq!(poisson_cobracket(&f, &trace, &tr).unwrap(), PBWTensor::zero());
}

fn gen_strategy(n: usize) -> impl Strategy<Value = IntFormGen> {
    let m = n + 1;
    prop_oneof![
        (1..=m, 1..=m).prop_map(|(i, j)| IntFormGen::R(i, j)),
        (1..=n).prop_map(IntFormGen::Phi),
        (1..=m).prop_map(IntFormGen::Psi),
        (1..=m).prop_map(IntFormGen::Chi),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn specialization_is_multiplicative(a in prop::collection::vec(gen_strategy(2), 1..3), b in prop::collection::vec(gen_strategy(2), 1..3)) {
        let f = sl(2);
        let sp = Specializer::new(2, Group::SL, ToralChoice::Printed).unwrap();
        let word = |gs: &[IntFormGen]| gs.iter().fold(P::one(), |acc, &g| acc.concat_mul(&f.gen(g).unwrap()));
        let (x, y) = (word(&a), word(&b));
        let lhs = sp.specialize(&f, &x.concat_mul(&y)).unwrap();
        let rhs = sp.ua().mul(&sp.specialize(&f, &x).unwrap(), &sp.specialize(&f, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cobracket_is_antisymmetric(a in prop::collection::vec(gen_strategy(1), 1..3)) {
        let f = sl(1);
        let sp = Specializer::new(1, Group::SL, ToralChoice::Printed).unwrap();
        let x = a.iter().fold(P::one(), |acc, &g| acc.concat_mul(&f.gen(g).unwrap()));
        let d = poisson_cobracket(&f, &sp, &x).unwrap();
        prop_assert_eq!(d.swap(), d.scale(&-BigRational::one()));
    }

    #[test]
    fn formal_coproduct_lifts_to_the_ambient_coproduct(a in prop::collection::vec(gen_strategy(1), 1..3)) {
        let f = sl(1);
        let x = a.iter().fold(P::one(), |acc, &g| acc.concat_mul(&f.gen(g).unwrap()));
        let d = f.formal_coproduct(&x).unwrap();
        prop_assert!(d.iter().all(|(_, c)| c.den().len() == 1));
        prop_assert_eq!(f.lift_tensor(&d).unwrap(), f.ambient_coproduct(&f.lift(&x).unwrap()).unwrap());
    }
}

#[test]
fn catalog_json_shape() {
    let c = verify_relation_catalog(&sl(1), Form::Q).unwrap();
    let j = c.to_json();
    let s = j.to_string();
    assert!(s.contains("\"phi.1\""));
    assert!(s.contains("verified"));
    let _ = BigRational::zero();
}
