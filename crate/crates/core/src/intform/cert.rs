//! (q - 1)-divisibility certificates inside the integer form.
//!
//! A formal expression F with Laurent coefficients lies in the form. To show
//! F ∈ (q - 1)·form we straighten its value at q = 1 into PBW order (lower
//! r's, χ_1..χ_n, upper r's; χ_{n+1} eliminated in SL) using exact identities
//! from the verified χ catalog, subtracting each identity with the constant
//! coefficient read at q = 1. When the value at q = 1 reaches 0 the remainder
//! is formally divisible by q - 1, and the quotient W is the certificate:
//! lift((q - 1) W) = lift(F).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{catalog::verify_relation_catalog, divide_formal, qm1, Form, Group, IntForm, IntFormGen, P};
use crate::coeffring::{AtOne, LaurentPoly, RatFunc};
use crate::error::{Error, Result};
use crate::ncalg::{Letter, Poly, Word};

pub(crate) struct PairRules {
    /// identity whose value at q = 1 is ba - ab - (degree ≤ 1), keyed by (b, a)
    swap: HashMap<(Letter, Letter), P>,
    /// identity whose value at q = 1 is χ_1 + ... + χ_{n+1} (SL only)
    trace: Option<P>,
    top_chi: Option<Letter>,
}

pub(crate) fn at_one(p: &P) -> Result<BTreeMap<Word, BigRational>> {
    let mut out = BTreeMap::new();
    for (w, c) in p.iter() {
        match c.regular_at_one() {
            AtOne::Value(v) if !v.is_zero() => {
                out.insert(w.clone(), v);
            }
            AtOne::Value(_) => {}
            AtOne::PoleAtOne => return Err(Error::OutOfForm(format!("coefficient {c} has a pole at q = 1"))),
        }
    }
    Ok(out)
}

pub(crate) fn rat(v: &BigRational) -> RatFunc {
    RatFunc::new(LaurentPoly::monomial(v.numer().clone(), 0), LaurentPoly::monomial(v.denom().clone(), 0))
        .expect("nonzero denominator")
}

impl IntForm {
    /// PBW rank of a χ-basis letter: lower r's, then χ's, then upper r's.
    pub(crate) fn pbw_key(&self, l: Letter) -> (u8, usize, usize) {
        match self.gen_of_letter(l) {
            IntFormGen::R(i, j) if i > j => (0, i, j),
            IntFormGen::Chi(i) => (1, i, 0),
            IntFormGen::R(i, j) if i < j => (2, i, j),
            g => unreachable!("{g:?} is not a χ-basis letter"),
        }
    }

    pub(crate) fn pair_rules(&self) -> Result<Arc<PairRules>> {
        if let Some(r) = self.rules.lock().unwrap().as_ref() {
            return Ok(r.clone());
        }
        let cat = verify_relation_catalog(self, Form::Plain)?;
        let mut swap = HashMap::new();
        let mut trace = None;
        let top = self.formal_spec().letter(IntFormGen::Chi(self.n() + 1).gensym())?;
        for rec in &cat.records {
            let Some(id) = &rec.identity else { continue };
            let e = self.to_chi(id)?;
            let v = at_one(&e)?;
            if v.is_empty() {
                continue;
            }
            let quad: Vec<(&Word, &BigRational)> = v.iter().filter(|(w, _)| w.len() >= 2).collect();
            if quad.is_empty() {
                if self.group() == Group::SL && v.keys().all(|w| w.len() == 1) && v.contains_key(&Word::letter(top)) {
                    let c = &v[&Word::letter(top)];
                    trace = Some(e.scale(&rat(&(BigRational::one() / c))));
                }
                continue;
            }
            if quad.len() != 2 || quad.iter().any(|(w, _)| w.len() != 2) {
                continue;
            }
            let (w1, c1) = quad[0];
            let (w2, c2) = quad[1];
            let (a, b) = (w1.0[0], w1.0[1]);
            if w2.0 != vec![b, a] || (c1 + c2) != BigRational::zero() {
                continue;
            }
            swap.entry((a, b)).or_insert_with(|| e.scale(&rat(&(BigRational::one() / c1))));
            swap.entry((b, a)).or_insert_with(|| e.scale(&rat(&(BigRational::one() / c2))));
        }
        let rules = Arc::new(PairRules {
            swap,
            trace,
            top_chi: (self.group() == Group::SL).then_some(top),
        });
        *self.rules.lock().unwrap() = Some(rules.clone());
        Ok(rules)
    }

    /// Straightens the value of F at q = 1 as described in the module docs.
    /// Returns the exact remainder G (lift(G) = lift(F)) and its value at
    /// q = 1, which is PBW-ordered.
    pub fn straighten_at_one(&self, f: &P) -> Result<(P, BTreeMap<Word, BigRational>)> {
        let rules = self.pair_rules()?;
        let mut g = self.to_chi(f)?;
        loop {
            let v = at_one(&g)?;
            let mut step = None;
            for (w, c) in &v {
                if let Some(t) = rules.top_chi {
                    if let Some(p) = w.0.iter().position(|&l| l == t) {
                        let r = rules.trace.as_ref().ok_or_else(|| Error::OutOfForm("no trace identity".into()))?;
                        step = Some((w.clone(), p, 1, r.clone(), c.clone()));
                        break;
                    }
                }
                if let Some(p) = w.0.windows(2).position(|x| self.pbw_key(x[0]) > self.pbw_key(x[1])) {
                    let key = (w.0[p], w.0[p + 1]);
                    let r = rules.swap.get(&key).ok_or_else(|| {
                        Error::OutOfForm(format!("no commutation identity for {}", self.formal_spec().fmt_word(&Word(vec![key.0, key.1]))))
                    })?;
                    step = Some((w.clone(), p, 2, r.clone(), c.clone()));
                    break;
                }
            }
            let Some((w, p, len, r, c)) = step else {
                return Ok((g, v));
            };
            let u = Poly::word(Word(w.0[..p].to_vec()));
            let t = Poly::word(Word(w.0[p + len..].to_vec()));
            let corr = u.concat_mul(&r).concat_mul(&t).scale(&rat(&c));
            g = g.minus(&corr);
        }
    }

    /// A formal W with Laurent coefficients and lift((q - 1) W) = lift(F), or
    /// None when F does not vanish at q = 1 modulo the relations.
    pub fn congruence_certificate(&self, f: &P) -> Result<Option<P>> {
        let (g, v) = self.straighten_at_one(f)?;
        if !v.is_empty() {
            return Ok(None);
        }
        let w = divide_formal(&g)?;
        let check = self.lift(&w.scale(&qm1()))?.minus(&self.lift(f)?);
        if !check.is_zero() {
            return Err(Error::OutOfForm("certificate does not lift back".into()));
        }
        Ok(Some(w))
    }
}
