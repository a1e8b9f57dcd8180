use std::collections::BTreeMap;

use super::spec::AlgebraSpec;
use super::word::{Poly, Word};
use crate::coeffring::Coeff;
use crate::error::Result;

/// A linear combination of k-fold tensors of words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor<C> {
    arity: usize,
    terms: BTreeMap<Vec<Word>, C>,
}

impl<C: Coeff> Tensor<C> {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// 1 ⊗ ... ⊗ 1
    pub fn unit(arity: usize) -> Self {
        let mut t = Self::zero(arity);
        t.add_term(vec![Word::empty(); arity], &C::one());
        t
    }

    pub fn pure(factors: Vec<Word>, c: C) -> Self {
        let mut t = Self::zero(factors.len());
        t.add_term(factors, &c);
        t
    }

    /// a ⊗ b for two polynomials.
    pub fn outer(a: &Poly<C>, b: &Poly<C>) -> Self {
        let mut t = Self::zero(2);
        for (u, x) in a.iter() {
            for (v, y) in b.iter() {
                t.add_term(vec![u.clone(), v.clone()], &x.times(y));
            }
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Word>, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &[Word]) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, k: Vec<Word>, c: &C) {
        debug_assert_eq!(k.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(C::zero);
        e.add_assign_ref(c);
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &C) {
        for (k, d) in &o.terms {
            self.add_term(k.clone(), &d.times(c));
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut t = self.clone();
        t.add_scaled(o, &C::one());
        t
    }

    pub fn minus(&self, o: &Self) -> Self {
        let mut t = self.clone();
        t.add_scaled(o, &C::one().negated());
        t
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut t = Self::zero(self.arity);
        t.add_scaled(self, c);
        t
    }

    /// Factorwise product, each factor normalized in its algebra.
    pub fn mul(&self, o: &Self, specs: &[&AlgebraSpec<C>]) -> Result<Self> {
        let mut out = Self::zero(self.arity);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let c = x.times(y);
                let mut parts: Vec<Poly<C>> = Vec::with_capacity(self.arity);
                for f in 0..self.arity {
                    parts.push(specs[f].nf_word(&a[f].concat(&b[f]))?);
                }
                expand_product(&parts, &c, &mut out);
            }
        }
        Ok(out)
    }

    /// Normalizes each factor.
    pub fn normalize(&self, specs: &[&AlgebraSpec<C>]) -> Result<Self> {
        let mut out = Self::zero(self.arity);
        for (a, c) in &self.terms {
            let parts: Vec<Poly<C>> = a
                .iter()
                .enumerate()
                .map(|(f, w)| specs[f].nf_word(w))
                .collect::<Result<_>>()?;
            expand_product(&parts, c, &mut out);
        }
        Ok(out)
    }

    /// Swaps the two factors of a 2-tensor.
    pub fn swap(&self) -> Self {
        assert_eq!(self.arity, 2);
        let mut out = Self::zero(2);
        for (k, c) in &self.terms {
            out.add_term(vec![k[1].clone(), k[0].clone()], c);
        }
        out
    }

    /// Applies a linear map to factor `f`.
    pub fn map_factor(&self, f: usize, mut g: impl FnMut(&Word) -> Result<Poly<C>>) -> Result<Self> {
        let mut out = Self::zero(self.arity);
        let mut cache: BTreeMap<Word, Poly<C>> = BTreeMap::new();
        for (k, c) in &self.terms {
            if !cache.contains_key(&k[f]) {
                cache.insert(k[f].clone(), g(&k[f])?);
            }
            for (w, d) in cache[&k[f]].iter() {
                let mut nk = k.clone();
                nk[f] = w.clone();
                out.add_term(nk, &d.times(c));
            }
        }
        Ok(out)
    }

    /// Replaces factor `f` by the tensor produced by `g`, raising the arity.
    pub fn expand_factor(&self, f: usize, new_arity_of_factor: usize, mut g: impl FnMut(&Word) -> Result<Tensor<C>>) -> Result<Self> {
        let mut out = Self::zero(self.arity - 1 + new_arity_of_factor);
        for (k, c) in &self.terms {
            let t = g(&k[f])?;
            for (ws, d) in t.iter() {
                let mut nk = Vec::with_capacity(out.arity);
                nk.extend_from_slice(&k[..f]);
                nk.extend(ws.iter().cloned());
                nk.extend_from_slice(&k[f + 1..]);
                out.add_term(nk, &d.times(c));
            }
        }
        Ok(out)
    }

    /// Collapses a 2-tensor by multiplying its factors in one algebra.
    pub fn multiply_out(&self, spec: &AlgebraSpec<C>) -> Result<Poly<C>> {
        let mut out = Poly::zero();
        for (k, c) in &self.terms {
            let mut w = Word::empty();
            for part in k {
                w = w.concat(part);
            }
            out.add_scaled(&spec.nf_word(&w)?, c);
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Tensor<D> {
        let mut out = Tensor::zero(self.arity);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    pub fn fmt_with(&self, specs: &[&AlgebraSpec<C>]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let fs: Vec<String> = k.iter().enumerate().map(|(f, w)| specs[f].fmt_word(w)).collect();
                format!("({c}) {}", fs.join(" ⊗ "))
            })
            .collect();
        parts.join(" + ")
    }

    pub fn to_json(&self, specs: &[&AlgebraSpec<C>]) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let words: Vec<serde_json::Value> = k
                    .iter()
                    .enumerate()
                    .map(|(f, w)| {
                        serde_json::Value::Array(w.0.iter().map(|l| specs[f].gensym(*l).to_json()).collect())
                    })
                    .collect();
                serde_json::json!({ "coeff": c.to_json(), "words": words })
            })
            .collect();
        serde_json::json!({ "arity": self.arity, "terms": terms })
    }
}

fn expand_product<C: Coeff>(parts: &[Poly<C>], c: &C, out: &mut Tensor<C>) {
    fn rec<C: Coeff>(parts: &[Poly<C>], idx: usize, key: &mut Vec<Word>, c: &C, out: &mut Tensor<C>) {
        if idx == parts.len() {
            out.add_term(key.clone(), c);
            return;
        }
        for (w, d) in parts[idx].iter() {
            key.push(w.clone());
            rec(parts, idx + 1, key, &c.times(d), out);
            key.pop();
        }
    }
    let mut key = Vec::with_capacity(parts.len());
    rec(parts, 0, &mut key, c, out);
}
