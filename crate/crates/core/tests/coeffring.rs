use num_bigint::BigInt;
use proptest::prelude::*;
use qfun_core::coeffring::{AtOne, CoeffError, LaurentPoly, RatFunc};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..5, -6i64..7), 0..5).prop_map(LaurentPoly::from_pairs)
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), nonzero_laurent()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

// evaluate at an integer point by exact rational arithmetic, used as an
// independent check of the symbolic operations
fn eval(p: &LaurentPoly, x: i64) -> num_rational::BigRational {
    let x = num_rational::BigRational::from_integer(BigInt::from(x));
    let mut acc = num_rational::BigRational::from_integer(BigInt::from(0));
    for (k, c) in p.terms() {
        let mut t = num_rational::BigRational::from_integer(c.clone());
        if k >= 0 {
            for _ in 0..k {
                t *= &x;
            }
        } else {
            for _ in 0..(-k) {
                t /= &x;
            }
        }
        acc += t;
    }
    acc
}

#[test]
fn display_and_constants() {
    assert_eq!(LaurentPoly::q_minus_qinv().to_string(), "q - q^-1");
    assert_eq!(LaurentPoly::q_minus_qinv().pow(2).to_string(), "q^2 - 2 + q^-2");
    assert_eq!(LaurentPoly::zero().to_string(), "0");
}

#[test]
fn division_by_q_minus_one() {
    let p = LaurentPoly::from_pairs([(2, 1), (0, -1)]);
    assert_eq!(p.divide_by_q_minus_1().unwrap(), LaurentPoly::from_pairs([(1, 1), (0, 1)]));
    let r = LaurentPoly::from_pairs([(1, 1), (0, 1)]).divide_by_q_minus_1();
    assert!(matches!(r, Err(CoeffError::NotDivisible { .. })));
}

#[test]
fn ratfunc_canonical_and_pole() {
    let a = RatFunc::new(LaurentPoly::from_pairs([(2, 1), (0, -1)]), LaurentPoly::from_pairs([(1, 1), (0, -1)])).unwrap();
    assert_eq!(a.as_laurent(), Some(&LaurentPoly::from_pairs([(1, 1), (0, 1)])));
    let inv = RatFunc::from_laurent(LaurentPoly::q_minus_1()).inverse().unwrap();
    assert_eq!(inv.regular_at_one(), AtOne::PoleAtOne);
    assert!(RatFunc::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert!(a.sub_ref(&a).is_zero());
        prop_assert_eq!(eval(&a.mul_ref(&b), 3), eval(&a, 3) * eval(&b, 3));
    }

    #[test]
    fn divide_then_multiply_round_trips(a in laurent()) {
        let p = a.mul_ref(&LaurentPoly::q_minus_1());
        prop_assert_eq!(p.divide_by_q_minus_1().unwrap(), a.clone());
        prop_assert_eq!(p.evaluate_at_one(), BigInt::from(0));
    }

    #[test]
    fn json_round_trip(a in laurent(), r in ratfunc()) {
        prop_assert_eq!(LaurentPoly::from_json(&a.to_json()).unwrap(), a);
        prop_assert_eq!(RatFunc::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn ratfunc_matches_cross_multiplication(a in ratfunc(), b in ratfunc()) {
        let s = a.add_ref(&b);
        // s = a + b  iff  s.num * a.den * b.den = (a.num b.den + b.num a.den) * s.den
        let lhs = s.num().mul_ref(a.den()).mul_ref(b.den());
        let rhs = a.num().mul_ref(b.den()).add_ref(&b.num().mul_ref(a.den())).mul_ref(s.den());
        prop_assert_eq!(lhs, rhs);
        let p = a.mul_ref(&b);
        prop_assert_eq!(p.num().mul_ref(a.den()).mul_ref(b.den()), a.num().mul_ref(b.num()).mul_ref(p.den()));
        if !b.is_zero() {
            prop_assert_eq!(a.div_ref(&b).unwrap().mul_ref(&b), a.clone());
        }
        // canonical: equal values give equal representations
        prop_assert_eq!(a.add_ref(&b).sub_ref(&b), a);
    }
}
