//! Evaluation of parsed expressions in one of the algebras.

use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;
use qfun_core::classical::{reference_cobracket, ClassicalGen, LieStructure, PBWElement, PBWTensor, UAlgebra};
use qfun_core::intform::{poisson_cobracket, Group, IntForm, IntFormGen, Specializer, ToralChoice};
use qfun_core::ncalg::{AlgebraSpec, Poly, Tensor, Word};
use qfun_core::qmatrix::{transport, MatrixAlgebra, MatrixOrder};
use qfun_core::qsl::{BorelAlgebra, BorelSign, GLAlgebra, GLElement, GLTensor, SLAlgebra, SlStrategy};
use qfun_core::uq::UqAlgebra;
use qfun_core::{LaurentPoly, RatFunc};
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::expr::{Expr, Func, Gen};
use crate::parser::AlgebraKind;

type P = Poly<RatFunc>;

pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Core(#[from] qfun_core::Error),
    #[error("{0}")]
    Type(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("result has {0} terms, above QFUN_MAX_TERMS = {1}")]
    TooManyTerms(usize, usize),
}

impl From<qfun_core::CoeffError> for EvalError {
    fn from(e: qfun_core::CoeffError) -> Self {
        EvalError::Core(e.into())
    }
}

pub type EvalResult<T> = std::result::Result<T, EvalError>;

#[derive(Clone, Debug)]
pub struct Settings {
    pub n: usize,
    pub algebra: AlgebraKind,
    pub order: MatrixOrder,
    pub strategy: SlStrategy,
    pub toral: ToralChoice,
    pub max_terms: usize,
}

impl Settings {
    pub fn new(n: usize, algebra: AlgebraKind) -> Self {
        Self {
            n,
            algebra,
            order: MatrixOrder::Lex,
            strategy: SlStrategy::Diagonal74,
            toral: ToralChoice::Printed,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(RatFunc),
    Elem(P),
    Gl(GLElement<RatFunc>),
    Tensor(Tensor<RatFunc>),
    GlTensor(GLTensor<RatFunc>),
    Cl(PBWElement),
    ClTensor(PBWTensor),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Elem(_) | Value::Gl(_) | Value::Cl(_) => "element",
            Value::Tensor(_) | Value::GlTensor(_) | Value::ClTensor(_) => "tensor",
        }
    }

    pub fn term_count(&self) -> usize {
        match self {
            Value::Scalar(_) => 1,
            Value::Elem(p) => p.len(),
            Value::Gl(g) => g.body.len(),
            Value::Tensor(t) => t.len(),
            Value::GlTensor(t) => t.body.len(),
            Value::Cl(e) => e.terms.len(),
            Value::ClTensor(t) => t.terms.len(),
        }
    }
}

enum Backend {
    M(MatrixAlgebra<RatFunc>),
    Sl(SLAlgebra<RatFunc>),
    Gl(GLAlgebra<RatFunc>),
    Borel(BorelAlgebra<RatFunc>, SLAlgebra<RatFunc>),
    Uq(UqAlgebra),
    Uh(UAlgebra),
    Formal(Specializer),
}

/// One algebra, ready to evaluate expressions. In formal mode (SL or GL
/// only) expressions stay words in r, phi, psi, chi, which is what
/// specialization and the cobracket need.
pub struct Session {
    settings: Settings,
    backend: Backend,
    form: OnceLock<IntForm>,
}

fn rat_of(c: &RatFunc) -> EvalResult<BigRational> {
    let num = c.num().as_constant();
    let den = c.den().as_constant();
    match (num, den) {
        (Some(a), Some(b)) => Ok(BigRational::new(a, b)),
        _ => Err(EvalError::Type(format!("U(h) is defined over Q; coefficient {c} involves q"))),
    }
}

fn ratfunc_of(r: &BigRational) -> RatFunc {
    RatFunc::new(LaurentPoly::monomial(r.numer().clone(), 0), LaurentPoly::monomial(r.denom().clone(), 0)).expect("nonzero")
}

impl Session {
    pub fn new(settings: Settings, formal: bool) -> EvalResult<Self> {
        Self::with_central(settings, formal, false)
    }

    /// `central` selects U(h') (with c) over U(h) for the Uh algebra.
    pub fn with_central(settings: Settings, formal: bool, central: bool) -> EvalResult<Self> {
        let n = settings.n;
        if n == 0 {
            return Err(EvalError::Type("n must be at least 1".into()));
        }
        let backend = match (settings.algebra, formal) {
            (AlgebraKind::SL, true) => Backend::Formal(Specializer::new(n, Group::SL, settings.toral)?),
            (AlgebraKind::GL, true) => Backend::Formal(Specializer::new(n, Group::GL, settings.toral)?),
            (a, true) => return Err(EvalError::Unsupported(format!("integer-form expressions live in SL or GL, not {a}"))),
            (AlgebraKind::M, _) => Backend::M(MatrixAlgebra::new(n, settings.order.clone())?),
            (AlgebraKind::SL, _) => Backend::Sl(SLAlgebra::new(n, settings.strategy)?),
            (AlgebraKind::GL, _) => Backend::Gl(GLAlgebra::new(n, settings.order.clone())?),
            (AlgebraKind::BPlus, _) => Backend::Borel(BorelAlgebra::new(n, BorelSign::Plus)?, SLAlgebra::new(n, settings.strategy)?),
            (AlgebraKind::BMinus, _) => Backend::Borel(BorelAlgebra::new(n, BorelSign::Minus)?, SLAlgebra::new(n, settings.strategy)?),
            (AlgebraKind::Uq, _) => Backend::Uq(UqAlgebra::new(n)?),
            (AlgebraKind::Uh, _) => {
                let lie = if central { LieStructure::build_h_prime(n)? } else { LieStructure::build_h(n)? };
                Backend::Uh(UAlgebra::new(Arc::new(lie)))
            }
        };
        Ok(Self { settings, backend, form: OnceLock::new() })
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub fn is_formal(&self) -> bool {
        matches!(self.backend, Backend::Formal(_))
    }

    pub fn form(&self) -> EvalResult<&IntForm> {
        if let Some(f) = self.form.get() {
            return Ok(f);
        }
        let group = match self.settings.algebra {
            AlgebraKind::GL => Group::GL,
            _ => Group::SL,
        };
        let f = IntForm::new(self.settings.n, group)?;
        Ok(self.form.get_or_init(|| f))
    }

    pub fn specializer(&self) -> Option<&Specializer> {
        match &self.backend {
            Backend::Formal(sp) => Some(sp),
            _ => None,
        }
    }

    pub fn lie(&self) -> Option<&Arc<LieStructure>> {
        match &self.backend {
            Backend::Uh(ua) => Some(ua.lie()),
            Backend::Formal(sp) => Some(sp.lie()),
            _ => None,
        }
    }

    /// The rewriting system elements of this session live in.
    pub fn spec(&self) -> EvalResult<Arc<AlgebraSpec<RatFunc>>> {
        Ok(match &self.backend {
            Backend::M(a) => a.spec().clone(),
            Backend::Sl(a) => a.spec().clone(),
            Backend::Gl(a) => a.base().spec().clone(),
            Backend::Borel(b, _) => b.spec().clone(),
            Backend::Uq(u) => u.spec().clone(),
            Backend::Formal(_) => self.form()?.formal_spec().clone(),
            Backend::Uh(_) => return Err(EvalError::Unsupported("U(h) has no rewriting spec".into())),
        })
    }

    fn cap(&self, v: Value) -> EvalResult<Value> {
        let k = v.term_count();
        if k > self.settings.max_terms {
            return Err(EvalError::TooManyTerms(k, self.settings.max_terms));
        }
        Ok(v)
    }

    pub fn eval(&self, e: &Expr) -> EvalResult<Value> {
        let v = match e {
            Expr::Num(r) => Value::Scalar(ratfunc_of(r)),
            Expr::Q => Value::Scalar(RatFunc::q_pow(1)),
            Expr::Gen(g) => self.gen(g)?,
            Expr::DetQ => self.detq()?,
            Expr::DetQt => self.detqt()?,
            Expr::Call(f, a) => {
                let a = self.eval(a)?;
                self.call(*f, a)?
            }
            Expr::Neg(a) => self.scale(self.eval(a)?, &RatFunc::from_int(-1))?,
            Expr::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?, false)?,
            Expr::Sub(a, b) => self.add(self.eval(a)?, self.eval(b)?, true)?,
            Expr::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?)?,
            Expr::Pow(a, k) => self.pow(self.eval(a)?, *k)?,
        };
        self.cap(v)
    }

    fn one(&self) -> Value {
        match &self.backend {
            Backend::Gl(_) => Value::Gl(GLElement { body: P::one(), detpow: 0 }),
            Backend::Uh(_) => Value::Cl(PBWElement::one()),
            _ => Value::Elem(P::one()),
        }
    }

    fn gen(&self, g: &Gen) -> EvalResult<Value> {
        let bad = || EvalError::Type(format!("{g} is not a generator of this algebra"));
        Ok(match (&self.backend, g) {
            (Backend::M(a), Gen::X(i, j)) => Value::Elem(a.x(*i, *j)),
            (Backend::Sl(a), Gen::X(i, j)) => Value::Elem(a.x(*i, *j)),
            (Backend::Gl(a), Gen::X(i, j)) => Value::Gl(a.x(*i, *j)),
            (Backend::Borel(b, _), Gen::X(i, j)) => Value::Elem(b.x(*i, *j)?),
            (Backend::Sl(a), g) if g.is_integer_form() => {
                let f = self.form()?;
                let p = f.lift(&f.gen(int_gen(g))?)?;
                Value::Elem(a.import(&p, f.ambient_spec())?)
            }
            (Backend::Gl(a), g) if g.is_integer_form() => {
                let f = self.form()?;
                let p = f.lift(&f.gen(int_gen(g))?)?;
                Value::Gl(a.element(&transport(&p, f.ambient_spec(), a.base().spec(), false)?)?)
            }
            (Backend::Formal(_), Gen::X(i, j)) => {
                return Err(EvalError::Type(format!(
                    "x[{i},{j}] is not in the integer form; write r[{i},{j}] (x[i,j] = (q - q^-1) r[i,j] off the diagonal)"
                )))
            }
            (Backend::Formal(_), g) if g.is_integer_form() => Value::Elem(self.form()?.gen(int_gen(g))?),
            (Backend::Uq(u), Gen::F(i)) => Value::Elem(u.f(*i)),
            (Backend::Uq(u), Gen::E(i)) => Value::Elem(u.e(*i)),
            (Backend::Uq(u), Gen::G(i)) => Value::Elem(u.g(*i)),
            (Backend::Uq(u), Gen::Ginv(i)) => Value::Elem(u.g_inv(*i)),
            (Backend::Uh(ua), g) => {
                let lie = ua.lie();
                let k = match *g {
                    Gen::Lf(j, i) => lie.f(j, i),
                    Gen::Lh(i) => lie.h(i),
                    Gen::Le(i, j) => lie.e(i, j),
                    Gen::C => lie.c().ok_or_else(|| EvalError::Type("c lives in U(h'), not U(h)".into()))?,
                    _ => return Err(bad()),
                };
                Value::Cl(ua.gen(k))
            }
            _ => return Err(bad()),
        })
    }

    fn detq(&self) -> EvalResult<Value> {
        Ok(match &self.backend {
            Backend::M(a) => Value::Elem(a.det_q()?),
            Backend::Sl(a) => Value::Elem(a.nf(&a.base().det_q()?)?),
            Backend::Gl(a) => Value::Gl(a.det()),
            _ => return Err(EvalError::Unsupported(format!("detq is not defined in {}", self.settings.algebra))),
        })
    }

    fn detqt(&self) -> EvalResult<Value> {
        let m = self.settings.n + 1;
        let idx: Vec<usize> = (1..=m).collect();
        match &self.backend {
            Backend::Formal(_) => Ok(Value::Elem(self.form()?.det_tilde(&idx, &idx))),
            Backend::Sl(_) | Backend::Gl(_) => {
                let f = self.form()?;
                let p = f.lift(&f.det_tilde(&idx, &idx))?;
                match &self.backend {
                    Backend::Sl(a) => Ok(Value::Elem(a.import(&p, f.ambient_spec())?)),
                    Backend::Gl(a) => Ok(Value::Gl(a.element(&transport(&p, f.ambient_spec(), a.base().spec(), false)?)?)),
                    _ => unreachable!(),
                }
            }
            _ => Err(EvalError::Unsupported(format!("detqt is not defined in {}", self.settings.algebra))),
        }
    }

    fn scale(&self, v: Value, c: &RatFunc) -> EvalResult<Value> {
        Ok(match v {
            Value::Scalar(s) => Value::Scalar(s.mul_ref(c)),
            Value::Elem(p) => Value::Elem(p.scale(c)),
            Value::Gl(g) => Value::Gl(g.scaled(c)),
            Value::Tensor(t) => Value::Tensor(t.scale(c)),
            Value::GlTensor(t) => Value::GlTensor(GLTensor { body: t.body.scale(c), detpow: t.detpow }),
            Value::Cl(e) => Value::Cl(e.scale(&rat_of(c)?)),
            Value::ClTensor(t) => Value::ClTensor(t.scale(&rat_of(c)?)),
        })
    }

    fn promote(&self, s: &RatFunc, like: &Value) -> EvalResult<Value> {
        let unit = match like {
            Value::Tensor(_) => Value::Tensor(Tensor::unit(2)),
            Value::GlTensor(t) => Value::GlTensor(GLTensor { body: Tensor::unit(2), detpow: t.detpow }),
            Value::ClTensor(_) => Value::ClTensor(PBWTensor::outer(&PBWElement::one(), &PBWElement::one())),
            _ => self.one(),
        };
        self.scale(unit, s)
    }

    fn add(&self, a: Value, b: Value, sub: bool) -> EvalResult<Value> {
        let b = if sub { self.scale(b, &RatFunc::from_int(-1))? } else { b };
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.add_ref(&y)),
            (Value::Scalar(s), other) => return self.add(self.promote(&s, &other)?, other, false),
            (other, Value::Scalar(s)) => {
                let p = self.promote(&s, &other)?;
                return self.add(other, p, false);
            }
            (Value::Elem(x), Value::Elem(y)) => Value::Elem(x.plus(&y)),
            (Value::Gl(x), Value::Gl(y)) => match &self.backend {
                Backend::Gl(a) => Value::Gl(a.add(&x, &y)?),
                _ => unreachable!(),
            },
            (Value::Tensor(x), Value::Tensor(y)) => Value::Tensor(x.plus(&y)),
            (Value::GlTensor(x), Value::GlTensor(y)) if x.detpow == y.detpow => {
                Value::GlTensor(GLTensor { body: x.body.plus(&y.body), detpow: x.detpow })
            }
            (Value::Cl(x), Value::Cl(y)) => Value::Cl(x.plus(&y)),
            (Value::ClTensor(x), Value::ClTensor(y)) => Value::ClTensor(x.plus(&y)),
            (x, y) => return Err(EvalError::Type(format!("cannot add a {} and a {}", x.kind(), y.kind()))),
        })
    }

    fn mul(&self, a: Value, b: Value) -> EvalResult<Value> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.mul_ref(&y)),
            (Value::Scalar(s), v) | (v, Value::Scalar(s)) => self.scale(v, &s)?,
            (Value::Elem(x), Value::Elem(y)) => Value::Elem(self.spec()?.mul(&x, &y)?),
            (Value::Gl(x), Value::Gl(y)) => match &self.backend {
                Backend::Gl(a) => Value::Gl(a.mul(&x, &y)?),
                _ => unreachable!(),
            },
            (Value::Tensor(x), Value::Tensor(y)) => {
                let s = self.spec()?;
                Value::Tensor(x.mul(&y, &[s.as_ref(), s.as_ref()])?)
            }
            (Value::GlTensor(x), Value::GlTensor(y)) => {
                let s = self.spec()?;
                Value::GlTensor(GLTensor { body: x.body.mul(&y.body, &[s.as_ref(), s.as_ref()])?, detpow: x.detpow + y.detpow })
            }
            (Value::Cl(x), Value::Cl(y)) => match &self.backend {
                Backend::Uh(ua) => Value::Cl(ua.mul(&x, &y)),
                _ => unreachable!(),
            },
            (Value::ClTensor(x), Value::ClTensor(y)) => match &self.backend {
                Backend::Uh(ua) => Value::ClTensor(ua.tensor_mul(&x, &y)),
                _ => unreachable!(),
            },
            (x, y) => return Err(EvalError::Type(format!("cannot multiply a {} by a {}", x.kind(), y.kind()))),
        })
    }

    fn pow(&self, a: Value, k: i64) -> EvalResult<Value> {
        if k < 0 {
            let inv = self.inverse(a)?;
            return self.pow(inv, -k);
        }
        if let Value::Scalar(s) = &a {
            return Ok(Value::Scalar(s.pow(k)?));
        }
        let mut acc = match &a {
            Value::Tensor(_) | Value::GlTensor(_) | Value::ClTensor(_) => self.promote(&RatFunc::one(), &a)?,
            _ => self.one(),
        };
        for _ in 0..k {
            acc = self.cap(self.mul(acc, a.clone())?)?;
        }
        Ok(acc)
    }

    /// Inverses exist for nonzero scalars, for c·det_q^k in GL and for
    /// c·(torus monomial) in U_q.
    fn inverse(&self, a: Value) -> EvalResult<Value> {
        let no = || EvalError::Type("negative powers need an invertible element (scalar, det_q in GL, torus monomial in Uq)".into());
        let single = |p: &P| -> Option<(Word, RatFunc)> {
            let mut it = p.iter();
            let (w, c) = it.next()?;
            it.next().is_none().then(|| (w.clone(), c.clone()))
        };
        match (&self.backend, a) {
            (_, Value::Scalar(s)) => Ok(Value::Scalar(s.inverse()?)),
            (Backend::Gl(_), Value::Gl(g)) => match single(&g.body) {
                Some((w, c)) if w.is_empty() => Ok(Value::Gl(GLElement { body: P::scalar(c.inverse()?), detpow: -g.detpow })),
                _ => Err(no()),
            },
            (Backend::Uq(u), Value::Elem(p)) => match single(&p) {
                Some((w, c)) if w.0.iter().all(|l| u.torus(*l).is_some()) => {
                    let letters = w.0.iter().rev().map(|l| {
                        let (i, s) = u.torus(*l).unwrap();
                        u.g_letter(i, -s)
                    });
                    let inv = Poly::monomial(Word(letters.collect()), c.inverse()?);
                    Ok(Value::Elem(u.triangular_nf(&inv)?))
                }
                _ => Err(no()),
            },
            _ => Err(no()),
        }
    }

    fn call(&self, f: Func, a: Value) -> EvalResult<Value> {
        let unsupported = |what: &str| EvalError::Unsupported(format!("{what} is not available in {}", self.settings.algebra));
        if let Value::Scalar(s) = &a {
            return Ok(match f {
                Func::S => Value::Scalar(s.clone()),
                Func::Eps => Value::Scalar(s.clone()),
                Func::Delta => self.promote(s, &Value::Tensor(Tensor::unit(2)))?,
                Func::Cobracket => match &self.backend {
                    Backend::Uh(_) | Backend::Formal(_) => Value::ClTensor(PBWTensor::zero()),
                    _ => return Err(unsupported("the cobracket")),
                },
            });
        }
        Ok(match (f, &self.backend, a) {
            (Func::S, Backend::M(_), _) => return Err(unsupported("the antipode (M is only a bialgebra)")),
            (Func::S, Backend::Sl(s), Value::Elem(p)) => Value::Elem(s.antipode(&p)?),
            (Func::S, Backend::Gl(g), Value::Gl(x)) => Value::Gl(g.antipode(&x)?),
            (Func::S, Backend::Borel(b, sl), Value::Elem(p)) => Value::Elem(b.antipode(&p, sl)?),
            (Func::S, Backend::Uq(u), Value::Elem(p)) => Value::Elem(u.antipode(&p)?),
            (Func::S, Backend::Formal(_), Value::Elem(p)) => Value::Elem(self.form()?.formal_antipode(&p)?),
            (Func::S, Backend::Uh(ua), Value::Cl(x)) => {
                let mut out = PBWElement::zero();
                for (w, c) in &x.terms {
                    let rev: Vec<usize> = w.iter().rev().copied().collect();
                    let sign = if w.len() % 2 == 0 { c.clone() } else { -c.clone() };
                    out.add_scaled(&ua.nf_word(&rev), &sign);
                }
                Value::Cl(out)
            }
            (Func::Delta, Backend::M(a), Value::Elem(p)) => Value::Tensor(a.coproduct(&p)?),
            (Func::Delta, Backend::Sl(a), Value::Elem(p)) => Value::Tensor(a.coproduct(&p)?),
            (Func::Delta, Backend::Gl(a), Value::Gl(x)) => Value::GlTensor(a.coproduct(&x)?),
            (Func::Delta, Backend::Borel(b, _), Value::Elem(p)) => Value::Tensor(b.coproduct(&p)?),
            (Func::Delta, Backend::Uq(u), Value::Elem(p)) => Value::Tensor(u.coproduct(&p)?),
            (Func::Delta, Backend::Formal(_), Value::Elem(p)) => Value::Tensor(self.form()?.formal_coproduct(&p)?),
            (Func::Delta, Backend::Uh(ua), Value::Cl(x)) => Value::ClTensor(ua.coproduct(&x)),
            (Func::Eps, Backend::M(a), Value::Elem(p)) => Value::Scalar(a.counit(&p)),
            (Func::Eps, Backend::Sl(a), Value::Elem(p)) => Value::Scalar(a.counit(&p)),
            (Func::Eps, Backend::Gl(a), Value::Gl(x)) => Value::Scalar(a.counit(&x)),
            (Func::Eps, Backend::Borel(b, _), Value::Elem(p)) => Value::Scalar(b.counit(&p)),
            (Func::Eps, Backend::Uq(u), Value::Elem(p)) => Value::Scalar(u.counit(&p)),
            (Func::Eps, Backend::Formal(_), Value::Elem(p)) => Value::Scalar(self.form()?.formal_counit(&p)?),
            (Func::Eps, Backend::Uh(_), Value::Cl(x)) => {
                Value::Scalar(ratfunc_of(x.terms.get(&Vec::new()).unwrap_or(&BigRational::zero())))
            }
            (Func::Cobracket, Backend::Formal(sp), Value::Elem(p)) => Value::ClTensor(poisson_cobracket(self.form()?, sp, &p)?),
            (Func::Cobracket, Backend::Uh(ua), Value::Cl(x)) => Value::ClTensor(classical_cobracket(ua, &x)?),
            (Func::Cobracket, Backend::Sl(_) | Backend::Gl(_), _) => {
                return Err(EvalError::Unsupported(
                    "the cobracket needs an integer-form expression; use the cobracket or specialize command".into(),
                ))
            }
            (f, _, v) => return Err(EvalError::Type(format!("{} cannot be applied to a {}", f.name(), v.kind()))),
        })
    }

    pub fn format(&self, v: &Value) -> EvalResult<String> {
        Ok(match v {
            Value::Scalar(c) => fmt_coeff_alone(c),
            Value::Elem(p) => fmt_poly(&*self.spec()?, p),
            Value::Gl(g) => fmt_gl(&*self.spec()?, &g.body, g.detpow),
            Value::Tensor(t) => fmt_tensor(&*self.spec()?, t),
            Value::GlTensor(t) => {
                let body = fmt_tensor(&*self.spec()?, &t.body);
                if t.detpow == 0 {
                    body
                } else {
                    format!("({body}) * (detq^{k} ⊗ detq^{k})", k = t.detpow)
                }
            }
            Value::Cl(e) => e.fmt_with(self.lie().expect("classical value")),
            Value::ClTensor(t) => t.fmt_with(self.lie().expect("classical value")),
        })
    }

    pub fn to_json(&self, v: &Value) -> EvalResult<Json> {
        Ok(match v {
            Value::Scalar(c) => json!({ "kind": "scalar", "value": c.to_json() }),
            Value::Elem(p) => json!({ "kind": "element", "value": self.spec()?.poly_to_json(p) }),
            Value::Gl(g) => json!({ "kind": "element", "value": self.spec()?.poly_to_json(&g.body), "detpow": g.detpow }),
            Value::Tensor(t) => {
                let s = self.spec()?;
                json!({ "kind": "tensor", "value": t.to_json(&[s.as_ref(), s.as_ref()]) })
            }
            Value::GlTensor(t) => {
                let s = self.spec()?;
                json!({ "kind": "tensor", "value": t.body.to_json(&[s.as_ref(), s.as_ref()]), "detpow": t.detpow })
            }
            Value::Cl(e) => json!({ "kind": "element", "value": e.to_json(self.lie().expect("classical value")) }),
            Value::ClTensor(t) => json!({ "kind": "tensor", "value": t.to_json(self.lie().expect("classical value")) }),
        })
    }
}

fn int_gen(g: &Gen) -> IntFormGen {
    match *g {
        Gen::R(i, j) => IntFormGen::R(i, j),
        Gen::Phi(i) => IntFormGen::Phi(i),
        Gen::Psi(i) => IntFormGen::Psi(i),
        Gen::Chi(i) => IntFormGen::Chi(i),
        _ => unreachable!("not an integer-form generator"),
    }
}

/// δ on U(h): the displayed formulas on generators, extended by
/// δ(xy) = δ(x)Δ(y) + Δ(x)δ(y).
pub fn classical_cobracket(ua: &UAlgebra, x: &PBWElement) -> EvalResult<PBWTensor> {
    let lie = ua.lie();
    let gens = ClassicalGen::all(lie);
    let on_gen = |k: usize| -> EvalResult<PBWTensor> {
        let g = gens
            .iter()
            .find(|g| g.index(lie).ok() == Some(k))
            .ok_or_else(|| EvalError::Unsupported(format!("no cobracket formula for basis element {}", lie.basis()[k])))?;
        Ok(reference_cobracket(lie, *g)?)
    };
    let mut out = PBWTensor::zero();
    for (w, c) in &x.terms {
        let mut delta = PBWTensor::zero();
        let mut cop = PBWTensor::outer(&PBWElement::one(), &PBWElement::one());
        for &k in w {
            let dk = on_gen(k)?;
            let ck = ua.coproduct(&ua.gen(k));
            delta = ua.tensor_mul(&delta, &ck).plus(&ua.tensor_mul(&cop, &dk));
            cop = ua.tensor_mul(&cop, &ck);
        }
        out.add_scaled(&delta, c);
    }
    Ok(out)
}

/// Coefficient text that the parser reads back: Laurent polynomials as is,
/// other rational functions as (num)*(den)^-1.
fn coeff_body(c: &RatFunc) -> String {
    if c.den().is_one() {
        return c.num().to_string();
    }
    if let (Some(a), Some(b)) = (c.num().as_constant(), c.den().as_constant()) {
        return BigRational::new(a, b).to_string();
    }
    format!("({})*({})^-1", c.num(), c.den())
}

fn fmt_coeff_alone(c: &RatFunc) -> String {
    coeff_body(c)
}

/// Splits off a leading minus when the coefficient is a single term.
fn signed_coeff(c: &RatFunc) -> (bool, String) {
    let body = coeff_body(c);
    let simple = !body.contains(' ') && !body.contains(")^-1");
    match body.strip_prefix('-') {
        Some(rest) if simple => (true, rest.to_string()),
        _ if simple => (false, body),
        _ => (false, format!("({body})")),
    }
}

pub fn fmt_poly(spec: &AlgebraSpec<RatFunc>, p: &P) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (w, c)) in p.iter().rev().enumerate() {
        let (neg, body) = signed_coeff(c);
        if k > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        if w.is_empty() {
            s.push_str(&body);
        } else {
            if body != "1" {
                s.push_str(&body);
                s.push('*');
            }
            s.push_str(&spec.fmt_word(w));
        }
    }
    s
}

fn fmt_gl(spec: &AlgebraSpec<RatFunc>, body: &P, detpow: i64) -> String {
    let b = fmt_poly(spec, body);
    if detpow == 0 {
        b
    } else {
        format!("({b})*detq^{detpow}")
    }
}

pub fn fmt_tensor(spec: &AlgebraSpec<RatFunc>, t: &Tensor<RatFunc>) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (ws, c)) in t.iter().enumerate() {
        let (neg, body) = signed_coeff(c);
        if k > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        if body != "1" {
            s.push_str(&body);
            s.push('*');
        }
        let fs: Vec<String> = ws.iter().map(|w| spec.fmt_word(w)).collect();
        s.push_str(&fs.join(" ⊗ "));
    }
    s
}
