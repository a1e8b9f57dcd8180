use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::Coeff;

/// Position of a generator in its algebra's alphabet; smaller means earlier
/// in the generator order.
pub type Letter = u16;

/// A product of generators, left to right. The empty word is the unit.
/// Ordered degree-lexicographically by letter rank.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + o.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&o.0);
        Word(v)
    }

    /// Nondecreasing in letter rank.
    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite linear combination of words (no normalization implied).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), C::one())
    }

    pub fn scalar(c: C) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, C::one())
    }

    pub fn monomial(w: Word, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(w, &c);
        p
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

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, C> {
        self.terms
    }

    pub fn from_terms(terms: BTreeMap<Word, C>) -> Self {
        Self {
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn get(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    pub fn leading(&self) -> Option<(&Word, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (w, d) in &other.terms {
            if one {
                self.add_term(w.clone(), d);
            } else {
                self.add_term(w.clone(), &d.times(c));
            }
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &C::one());
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &C::one().negated());
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, d)| (w.clone(), d.times(c)))
                .filter(|(_, d)| !d.is_zero())
                .collect(),
        }
    }

    pub fn negated(&self) -> Self {
        self.scale(&C::one().negated())
    }

    /// Free (unreduced) product: concatenate words.
    pub fn concat_mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a.concat(b), &x.times(y));
            }
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c}){w:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
