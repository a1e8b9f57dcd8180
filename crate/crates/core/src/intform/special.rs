//! Specialization at q = 1: the map Φ from the form onto U(h) (or U(h')),
//! and the Poisson cobracket (Δ - Δ^op)/(q - 1) read through it.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{is_laurent, qm1, Group, IntForm, IntFormGen, P};
use crate::classical::{LieStructure, PBWElement, PBWTensor, UAlgebra};
use crate::coeffring::{AtOne, RatFunc};
use crate::error::{Error, Result};
use crate::ncalg::{Poly, Tensor, Word};

/// Where the toral generators go in GL. `Printed` sends χ_{n+1} to the
/// central c; `Trace` sends χ_1 + ... + χ_{n+1} to c.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToralChoice {
    Printed,
    Trace,
}

pub struct Specializer {
    n: usize,
    group: Group,
    choice: ToralChoice,
    ua: UAlgebra,
    chi: Vec<PBWElement>,
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

fn sign(k: usize) -> BigRational {
    if k % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn value_at_one(c: &RatFunc) -> Result<BigRational> {
    match c.regular_at_one() {
        AtOne::Value(v) => Ok(v),
        AtOne::PoleAtOne => Err(Error::OutOfForm(format!("coefficient {c} has a pole at q = 1"))),
    }
}

impl Specializer {
    pub fn new(n: usize, group: Group, choice: ToralChoice) -> Result<Self> {
        let lie = Arc::new(match group {
            Group::SL => LieStructure::build_h(n)?,
            Group::GL => LieStructure::build_h_prime(n)?,
        });
        let m = n + 1;
        let h = |k: usize| PBWElement::monomial(vec![lie.h(k)], BigRational::one());
        // SL: χ_j = χ_{n+1} + Σ_{k≥j} h_k with Σ χ_j = 0
        let mut top = PBWElement::zero();
        for k in 1..=n {
            top.add_scaled(&h(k), &(int(-(k as i64)) / int(m as i64)));
        }
        let central = |s: BigRational| match lie.c() {
            Some(c) => PBWElement::monomial(vec![c], s),
            None => PBWElement::zero(),
        };
        let base = match (group, choice) {
            (Group::SL, _) => top,
            (Group::GL, ToralChoice::Printed) => central(BigRational::one()),
            (Group::GL, ToralChoice::Trace) => top.plus(&central(BigRational::one() / int(m as i64))),
        };
        let chi = (1..=m)
            .map(|j| {
                let mut x = base.clone();
                for k in j..=n {
                    x = x.plus(&h(k));
                }
                x
            })
            .collect();
        Ok(Self {
            n,
            group,
            choice,
            ua: UAlgebra::new(lie),
            chi,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn choice(&self) -> ToralChoice {
        self.choice
    }

    pub fn lie(&self) -> &Arc<LieStructure> {
        self.ua.lie()
    }

    pub fn ua(&self) -> &UAlgebra {
        &self.ua
    }

    /// Image of χ_i.
    pub fn chi_image(&self, i: usize) -> &PBWElement {
        &self.chi[i - 1]
    }

    /// Image of a generator of the χ-basis alphabet (r_ij with i ≠ j, χ_i).
    pub fn gen_image(&self, g: IntFormGen) -> Result<PBWElement> {
        let lie = self.lie();
        Ok(match g {
            IntFormGen::R(i, j) if i < j => PBWElement::monomial(vec![lie.f(j, i)], sign(j - i)),
            IntFormGen::R(i, j) if i > j => PBWElement::monomial(vec![lie.e(j, i)], sign(i - j - 1)),
            IntFormGen::Chi(i) => self.chi_image(i).clone(),
            IntFormGen::R(_, _) => PBWElement::one(),
            IntFormGen::Phi(i) => self.chi_image(i).minus(self.chi_image(i + 1)),
            IntFormGen::Psi(i) => (1..=i).fold(PBWElement::zero(), |acc, j| acc.plus(self.chi_image(j))),
        })
    }

    fn word_image(&self, f: &IntForm, w: &Word) -> Result<PBWElement> {
        let mut acc = PBWElement::one();
        for &l in &w.0 {
            acc = self.ua.mul(&acc, &self.gen_image(f.gen_of_letter(l))?);
        }
        Ok(acc)
    }

    /// Φ(p): rewrite in χ-basis letters, evaluate coefficients at q = 1 and
    /// map letters to U(h). A pole at q = 1 means p was not given by a
    /// certificate of membership.
    pub fn specialize(&self, f: &IntForm, p: &P) -> Result<PBWElement> {
        let p = f.to_chi(p)?;
        let mut out = PBWElement::zero();
        for (w, c) in p.iter() {
            let v = value_at_one(c)?;
            if v.is_zero() {
                continue;
            }
            out.add_scaled(&self.word_image(f, w)?, &v);
        }
        Ok(out)
    }

    pub fn specialize_tensor(&self, f: &IntForm, t: &Tensor<RatFunc>) -> Result<PBWTensor> {
        let mut out = PBWTensor::zero();
        for (ws, c) in t.iter() {
            let v = value_at_one(c)?;
            if v.is_zero() {
                continue;
            }
            let a = self.specialize(f, &Poly::word(ws[0].clone()))?;
            let b = self.specialize(f, &Poly::word(ws[1].clone()))?;
            out.add_scaled(&PBWTensor::outer(&a, &b), &v);
        }
        Ok(out)
    }
}

/// Φ(p) with the printed toral choice.
pub fn specialize_phi(f: &IntForm, p: &P) -> Result<PBWElement> {
    Specializer::new(f.n(), f.group(), ToralChoice::Printed)?.specialize(f, p)
}

/// δ(Φ(x)) = Φ⊗Φ((Δ(x) - Δ^op(x)) / (q - 1)).
pub fn poisson_cobracket(f: &IntForm, sp: &Specializer, x: &P) -> Result<PBWTensor> {
    let t = f.formal_coproduct(x)?;
    let d = t.minus(&t.swap());
    let inv = qm1().inverse()?;
    let mut out = Tensor::zero(2);
    for (ws, c) in d.iter() {
        let e = c.mul_ref(&inv);
        if let AtOne::PoleAtOne = e.regular_at_one() {
            return Err(Error::OutOfForm(format!("Δ - Δ^op has coefficient {c}, not divisible by q - 1")));
        }
        out.add_term(ws.clone(), &e);
    }
    sp.specialize_tensor(f, &out)
}

#[derive(Clone, Debug)]
pub struct SpanIdentity {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

/// The identities tying the three toral families together:
/// r_ii = 1 + (q-1)χ_i, φ_i = χ_i - χ_{i+1},
/// ψ_i = Σ_{j≤i} r_11...r_{j-1,j-1} χ_j, and in SL χ_1 + ... + χ_{n+1} ∈ (q-1)·form.
pub fn check_span_identities(f: &IntForm) -> Result<Vec<SpanIdentity>> {
    let n = f.n();
    let mut out = Vec::new();
    let mut push = |name: String, lhs: &P, rhs: &P| -> Result<()> {
        let diff = f.lift(&lhs.minus(rhs))?;
        out.push(SpanIdentity {
            name,
            holds: diff.is_zero(),
            detail: if diff.is_zero() { String::new() } else { f.fmt_ambient(&diff) },
        });
        Ok(())
    };
    for i in 1..=n + 1 {
        let rhs = P::one().plus(&f.chi(i).scale(&qm1()));
        push(format!("r[{i},{i}] = 1 + (q-1)chi[{i}]"), &f.r(i, i), &rhs)?;
    }
    for i in 1..=n {
        push(format!("phi[{i}] = chi[{i}] - chi[{}]", i + 1), &f.phi(i), &f.chi(i).minus(&f.chi(i + 1)))?;
    }
    for i in 1..=n + 1 {
        let mut rhs = P::zero();
        for j in 1..=i {
            rhs = rhs.plus(&f.diag_prefix(j - 1).concat_mul(&f.chi(j)));
        }
        push(format!("psi[{i}] = sum_j r[1,1]..r[j-1,j-1] chi[j]"), &f.psi(i), &rhs)?;
    }
    if f.group() == Group::SL {
        let sum = (1..=n + 1).fold(P::zero(), |acc, i| acc.plus(&f.chi(i)));
        let cert = f.congruence_certificate(&sum)?;
        out.push(SpanIdentity {
            name: "chi[1] + ... + chi[n+1] in (q-1) form".into(),
            holds: cert.is_some(),
            detail: cert.map(|w| format!("(q-1)*({})", f.fmt(&w))).unwrap_or_default(),
        });
    }
    Ok(out)
}

/// Criterion for one generator: Δ, ε and (in SL) S given by formal
/// expressions with Laurent coefficients whose lifts are the ambient values.
#[derive(Clone, Debug)]
pub struct ClosureRecord {
    pub gen: IntFormGen,
    pub coproduct: bool,
    pub counit: bool,
    pub antipode: Option<bool>,
}

impl ClosureRecord {
    pub fn holds(&self) -> bool {
        self.coproduct && self.counit && self.antipode.unwrap_or(true)
    }
}

fn laurent_tensor(t: &Tensor<RatFunc>) -> bool {
    t.iter().all(|(_, c)| is_laurent(c))
}

fn laurent_poly(p: &P) -> bool {
    p.iter().all(|(_, c)| is_laurent(c))
}

/// Hopf closure of the integer forms on every generator r_ij, φ_i, ψ_i, χ_i.
pub fn hopf_closure(f: &IntForm) -> Result<Vec<ClosureRecord>> {
    let n = f.n();
    let m = n + 1;
    let mut gens: Vec<IntFormGen> = Vec::new();
    for i in 1..=m {
        gens.extend((1..=m).map(|j| IntFormGen::R(i, j)));
    }
    gens.extend((1..=n).map(IntFormGen::Phi));
    gens.extend((1..=m).map(IntFormGen::Psi));
    gens.extend((1..=m).map(IntFormGen::Chi));
    let mut out = Vec::new();
    for g in gens {
        let x = f.gen(g)?;
        let lx = f.lift(&x)?;
        let d = f.formal_coproduct(&x)?;
        let coproduct = laurent_tensor(&d) && f.lift_tensor(&d)? == f.ambient_coproduct(&lx)?;
        let e = f.formal_counit(&x)?;
        let counit = is_laurent(&e) && e == f.ambient_counit(&lx);
        let antipode = match f.group() {
            Group::SL => {
                let s = f.formal_antipode(&x)?;
                Some(laurent_poly(&s) && f.lift(&s)? == f.ambient_antipode(&lx)?)
            }
            Group::GL => None,
        };
        out.push(ClosureRecord { gen: g, coproduct, counit, antipode });
    }
    Ok(out)
}
