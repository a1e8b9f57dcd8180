use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qfun_cli::expr::num;
use qfun_cli::{parse, AlgebraKind, Context, Expr, Func, Gen, ParseError};

fn m(n: usize) -> Context {
    Context::new(n, AlgebraKind::M)
}

fn b(e: Expr) -> Box<Expr> {
    Box::new(e)
}

fn x(i: usize, j: usize) -> Expr {
    Expr::Gen(Gen::X(i, j))
}

#[test]
fn explicit_product() {
    let e = parse("x[1,2]*x[1,1]", &m(1)).unwrap();
    assert_eq!(e, Expr::Mul(b(x(1, 2)), b(x(1, 1))));
}

#[test]
fn juxtaposition_and_negative_power() {
    // ^ binds tighter than juxtaposition, products associate to the left
    let e = parse("q^-1 x[1,1] x[1,2]", &m(1)).unwrap();
    let want = Expr::Mul(b(Expr::Mul(b(Expr::Pow(b(Expr::Q), -1)), b(x(1, 1)))), b(x(1, 2)));
    assert_eq!(e, want);
    assert_eq!(parse("q^-1*x[1,1]*x[1,2]", &m(1)).unwrap(), want);
}

#[test]
fn coproduct_call_in_sl() {
    let e = parse("Delta(phi[1])", &Context::new(1, AlgebraKind::SL)).unwrap();
    assert_eq!(e, Expr::Call(Func::Delta, b(Expr::Gen(Gen::Phi(1)))));
}

#[test]
fn sums_and_unary_minus() {
    let e = parse("-x[1,1] + 2 x[2,2] - q", &m(1)).unwrap();
    let want = Expr::Sub(
        b(Expr::Add(b(Expr::Neg(b(x(1, 1)))), b(Expr::Mul(b(num(2)), b(x(2, 2)))))),
        b(Expr::Q),
    );
    assert_eq!(e, want);
}

#[test]
fn rational_literal_and_parens() {
    let e = parse("3/4 (x[1,1] + 1)^2", &m(1)).unwrap();
    let r = Expr::Num(BigRational::new(BigInt::from(3), BigInt::from(4)));
    assert_eq!(e, Expr::Mul(b(r), b(Expr::Pow(b(Expr::Add(b(x(1, 1)), b(num(1)))), 2))));
}

#[test]
fn every_generator_family_parses_in_its_context() {
    let cases = [
        ("detq - detqt", AlgebraKind::SL),
        ("r[1,2] phi[1] psi[2] chi[2]", AlgebraKind::GL),
        ("F[1] E[2] G[3] Ginv[1]", AlgebraKind::Uq),
        ("f[3,1] h[2] e[1,3]", AlgebraKind::Uh),
        ("c", AlgebraKind::Uh),
        ("x[1,1] x[1,3]", AlgebraKind::BPlus),
        ("x[3,1] x[2,2]", AlgebraKind::BMinus),
        ("S(x[1,2]) + eps(x[2,2]) + delta(r[1,2])", AlgebraKind::SL),
    ];
    for (src, alg) in cases {
        parse(src, &Context::new(2, alg)).unwrap_or_else(|e| panic!("{src} in {alg}: {e}"));
    }
}

#[test]
fn syntax_errors_carry_position() {
    match parse("x[1,1] +\n  * x[1,2]", &m(1)) {
        Err(ParseError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 3)),
        other => panic!("{other:?}"),
    }
    match parse("x[1,2", &m(1)) {
        Err(ParseError::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 6)),
        other => panic!("{other:?}"),
    }
    for bad in ["", "(x[1,1]", "x[1,1])", "q^", "q^x[1,1]", "S x[1,1]", "foo", "x[1]", "2/0"] {
        assert!(matches!(parse(bad, &m(1)), Err(ParseError::Syntax { .. })), "{bad:?}");
    }
}

#[test]
fn index_errors() {
    let cases = [
        ("x[3,1]", Context::new(1, AlgebraKind::M)),
        ("x[0,1]", Context::new(1, AlgebraKind::M)),
        ("x[2,1]", Context::new(1, AlgebraKind::BPlus)),
        ("x[1,2]", Context::new(1, AlgebraKind::BMinus)),
        ("phi[2]", Context::new(1, AlgebraKind::SL)),
        ("r[1,2]", Context::new(1, AlgebraKind::M)),
        ("E[2]", Context::new(1, AlgebraKind::Uq)),
        ("f[1,2]", Context::new(1, AlgebraKind::Uh)),
        ("e[2,1]", Context::new(1, AlgebraKind::Uh)),
        ("c", Context::new(1, AlgebraKind::SL)),
    ];
    for (src, ctx) in cases {
        match parse(src, &ctx) {
            Err(ParseError::Index { line: 1, col: 1, .. }) => {}
            other => panic!("{src} in {}: {other:?}", ctx.algebra),
        }
    }
    match parse("x[1,1] + x[1,3]", &m(1)) {
        Err(ParseError::Index { line, col, .. }) => assert_eq!((line, col), (1, 10)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn display_inserts_needed_parentheses() {
    let cases = [
        ("-(x[1,1] + q)", "-(x[1,1] + q)"),
        ("x[1,1] - (q - 1)", "x[1,1] - (q - 1)"),
        ("(x[1,1] x[1,2])^2", "(x[1,1]*x[1,2])^2"),
        ("x[1,1] (x[1,2] x[2,1])", "x[1,1]*(x[1,2]*x[2,1])"),
        ("S(detq)^-1", "S(detq)^-1"),
    ];
    for (src, shown) in cases {
        assert_eq!(parse(src, &m(1)).unwrap().to_string(), shown);
    }
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..5, 1i64..4).prop_map(|(a, d)| Expr::Num(BigRational::new(a.into(), d.into()))),
        Just(Expr::Q),
        Just(Expr::DetQ),
        Just(Expr::DetQt),
        (1usize..=3, 1usize..=3).prop_map(|(i, j)| x(i, j)),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        let func = prop_oneof![Just(Func::S), Just(Func::Delta), Just(Func::Eps), Just(Func::Cobracket)];
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(b(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, c)| Expr::Add(b(a), b(c))),
            (inner.clone(), inner.clone()).prop_map(|(a, c)| Expr::Sub(b(a), b(c))),
            (inner.clone(), inner.clone()).prop_map(|(a, c)| Expr::Mul(b(a), b(c))),
            (inner.clone(), -4i64..5).prop_map(|(a, k)| Expr::Pow(b(a), k)),
            (func, inner).prop_map(|(f, a)| Expr::Call(f, b(a))),
        ]
    })
}

proptest! {
    #[test]
    fn printed_trees_parse_back(e in expr()) {
        let shown = e.to_string();
        let back = parse(&shown, &m(2)).map_err(|err| TestCaseError::fail(format!("{shown}: {err}")))?;
        prop_assert_eq!(back, e);
    }

    #[test]
    fn parse_format_parse_is_stable(e in expr()) {
        // spacing and redundant parentheses may be chosen freely on input
        let loose = e.to_string().replace('*', " ").replace("(", "( ").replace(" + ", "+");
        let once = parse(&loose, &m(2)).map_err(|err| TestCaseError::fail(format!("{loose}: {err}")))?;
        let twice = parse(&once.to_string(), &m(2)).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(once.to_string(), twice.to_string());
    }
}

#[test]
fn detq_call_parens_versus_product() {
    assert_eq!(parse("detq()", &m(1)).unwrap(), Expr::DetQ);
    assert_eq!(parse("detq (x[1,1])", &m(1)).unwrap(), Expr::Mul(b(Expr::DetQ), b(x(1, 1))));
}
