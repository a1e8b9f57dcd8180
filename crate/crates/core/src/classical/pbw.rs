use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::lie::{LieStructure, LieVec};

/// Element of U(h): ordered monomials (nondecreasing basis indices) with
/// rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PBWElement {
    pub terms: BTreeMap<Vec<usize>, BigRational>,
}

impl PBWElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new(), BigRational::one())
    }

    pub fn monomial(w: Vec<usize>, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(w, &c);
        p
    }

    pub fn from_lie(v: &LieVec) -> Self {
        let mut p = Self::zero();
        for (k, c) in v {
            p.add_term(vec![*k], c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Vec<usize>, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &BigRational) {
        for (w, d) in &o.terms {
            self.add_term(w.clone(), &(d * c));
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &BigRational::one());
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &-BigRational::one());
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_ordered(&self) -> bool {
        self.terms.keys().all(|w| w.windows(2).all(|p| p[0] <= p[1]))
    }

    pub fn fmt_with(&self, lie: &LieStructure) -> String {
        fmt_terms(self.terms.iter().map(|(w, c)| (mono(lie, w), c)))
    }

    pub fn to_json(&self, lie: &LieStructure) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(w, c)| {
                serde_json::json!({
                    "coeff": c.to_string(),
                    "word": w.iter().map(|k| lie.basis()[*k].to_json()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "algebra": "U(h)", "terms": terms })
    }
}

fn mono(lie: &LieStructure, w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|k| lie.basis()[*k].to_string()).collect()
}

/// "a - 2*b + 1/2*c" from (monomial, coefficient) pairs; "1" is the empty monomial.
pub(crate) fn fmt_terms<'a>(it: impl Iterator<Item = (String, &'a BigRational)>) -> String {
    let mut s = String::new();
    for (w, c) in it {
        let neg = c.is_negative();
        let a = c.abs();
        match (s.is_empty(), neg) {
            (true, true) => s.push('-'),
            (true, false) => {}
            (false, true) => s.push_str(" - "),
            (false, false) => s.push_str(" + "),
        }
        if a.is_one() {
            s.push_str(&w);
        } else if w == "1" {
            let _ = write!(s, "{a}");
        } else {
            let _ = write!(s, "{a}*{w}");
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Element of U(h) ⊗ U(h) in PBW coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PBWTensor {
    pub terms: BTreeMap<(Vec<usize>, Vec<usize>), BigRational>,
}

impl PBWTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Vec<usize>, b: Vec<usize>, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let k = (a, b);
        let e = self.terms.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &BigRational) {
        for ((a, b), d) in &o.terms {
            self.add_term(a.clone(), b.clone(), &(d * c));
        }
    }

    pub fn outer(x: &PBWElement, y: &PBWElement) -> Self {
        let mut t = Self::zero();
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                t.add_term(a.clone(), b.clone(), &(c * d));
            }
        }
        t
    }

    /// x ∧ y = x ⊗ y - y ⊗ x.
    pub fn wedge(x: &PBWElement, y: &PBWElement) -> Self {
        let mut t = Self::outer(x, y);
        t.add_scaled(&Self::outer(y, x), &-BigRational::one());
        t
    }

    pub fn swap(&self) -> Self {
        let mut t = Self::zero();
        for ((a, b), c) in &self.terms {
            t.add_term(b.clone(), a.clone(), c);
        }
        t
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut t = Self::zero();
        t.add_scaled(self, c);
        t
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut t = self.clone();
        t.add_scaled(o, &BigRational::one());
        t
    }

    pub fn minus(&self, o: &Self) -> Self {
        let mut t = self.clone();
        t.add_scaled(o, &-BigRational::one());
        t
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.swap() == self.scale(&-BigRational::one())
    }

    pub fn fmt_with(&self, lie: &LieStructure) -> String {
        fmt_terms(
            self.terms
                .iter()
                .map(|((a, b), c)| (format!("{} ⊗ {}", mono(lie, a), mono(lie, b)), c)),
        )
    }

    pub fn to_json(&self, lie: &LieStructure) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let f = |w: &Vec<usize>| w.iter().map(|k| lie.basis()[*k].to_json()).collect::<Vec<_>>();
                serde_json::json!({ "coeff": c.to_string(), "factors": [f(a), f(b)] })
            })
            .collect();
        serde_json::json!({ "algebra": "U(h)⊗U(h)", "terms": terms })
    }
}

/// U(h) with PBW straightening; normal forms of words are memoized.
pub struct UAlgebra {
    lie: Arc<LieStructure>,
    memo: Mutex<HashMap<Vec<usize>, PBWElement>>,
}

impl UAlgebra {
    pub fn new(lie: Arc<LieStructure>) -> Self {
        Self {
            lie,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn lie(&self) -> &Arc<LieStructure> {
        &self.lie
    }

    pub fn gen(&self, k: usize) -> PBWElement {
        PBWElement::monomial(vec![k], BigRational::one())
    }

    /// Straightens a word: swap the first descent and add the bracket term.
    pub fn nf_word(&self, w: &[usize]) -> PBWElement {
        if let Some(p) = self.memo.lock().unwrap().get(w) {
            return p.clone();
        }
        let out = match w.windows(2).position(|p| p[0] > p[1]) {
            None => PBWElement::monomial(w.to_vec(), BigRational::one()),
            Some(p) => {
                let (a, b) = (w[p], w[p + 1]);
                let mut swapped = w.to_vec();
                swapped.swap(p, p + 1);
                let mut out = self.nf_word(&swapped);
                for (k, c) in self.lie.bracket(a, b).clone() {
                    let mut v = w[..p].to_vec();
                    v.push(k);
                    v.extend_from_slice(&w[p + 2..]);
                    out.add_scaled(&self.nf_word(&v), &c);
                }
                out
            }
        };
        self.memo.lock().unwrap().insert(w.to_vec(), out.clone());
        out
    }

    /// Normal form of an arbitrary linear combination of words.
    pub fn ue_normal_form(&self, expr: &[(Vec<usize>, BigRational)]) -> PBWElement {
        let mut out = PBWElement::zero();
        for (w, c) in expr {
            out.add_scaled(&self.nf_word(w), c);
        }
        out
    }

    pub fn mul(&self, a: &PBWElement, b: &PBWElement) -> PBWElement {
        let mut out = PBWElement::zero();
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_scaled(&self.nf_word(&w), &(x * y));
            }
        }
        out
    }

    pub fn commutator(&self, a: &PBWElement, b: &PBWElement) -> PBWElement {
        self.mul(a, b).minus(&self.mul(b, a))
    }

    pub fn tensor_mul(&self, s: &PBWTensor, t: &PBWTensor) -> PBWTensor {
        let mut out = PBWTensor::zero();
        for ((a1, b1), c1) in &s.terms {
            for ((a2, b2), c2) in &t.terms {
                let mut u = a1.clone();
                u.extend_from_slice(a2);
                let mut v = b1.clone();
                v.extend_from_slice(b2);
                let l = self.nf_word(&u);
                let r = self.nf_word(&v);
                out.add_scaled(&PBWTensor::outer(&l, &r), &(c1 * c2));
            }
        }
        out
    }

    /// Primitive coproduct Δ(x) = x⊗1 + 1⊗x extended multiplicatively.
    pub fn coproduct(&self, a: &PBWElement) -> PBWTensor {
        let mut out = PBWTensor::zero();
        for (w, c) in &a.terms {
            let mut t = PBWTensor::outer(&PBWElement::one(), &PBWElement::one());
            for k in w {
                let g = self.gen(*k);
                let d = PBWTensor::outer(&g, &PBWElement::one()).plus(&PBWTensor::outer(&PBWElement::one(), &g));
                t = self.tensor_mul(&t, &d);
            }
            out.add_scaled(&t, c);
        }
        out
    }

    pub fn memo_size(&self) -> usize {
        self.memo.lock().unwrap().len()
    }
}
