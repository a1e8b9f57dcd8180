use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use rand::{Rng, RngCore};

use super::gensym::GenSym;
use super::word::{Letter, Poly, Word};
use crate::coeffring::Coeff;
use crate::error::{Error, Result};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

const DEFAULT_STEP_CAP: usize = 20_000_000;

/// An extra reduction applied to words that no quadratic rule touches, e.g.
/// the det_q = 1 substitution.
pub trait PostReducer<C: Coeff>: Send + Sync {
    fn name(&self) -> &str;
    /// Replacement for `w`, or None when `w` is already canonical.
    fn reduce(&self, w: &Word) -> Result<Option<Poly<C>>>;
    /// A measure that every word of the replacement must strictly lower
    /// (compared lexicographically). None disables the guard.
    fn metric(&self, _w: &Word) -> Option<Vec<i64>> {
        None
    }
}

/// A two-letter rewrite rule `lhs -> rhs`.
#[derive(Clone, Debug)]
pub struct RewriteRule<C: Coeff> {
    pub lhs: (Letter, Letter),
    pub rhs: Poly<C>,
}

pub struct SpecBuilder<C: Coeff> {
    name: String,
    alphabet: Vec<GenSym>,
    rules: Vec<RewriteRule<C>>,
    post: Vec<Arc<dyn PostReducer<C>>>,
    step_cap: usize,
}

impl<C: Coeff> SpecBuilder<C> {
    pub fn new(name: impl Into<String>, alphabet: Vec<GenSym>) -> Self {
        Self {
            name: name.into(),
            alphabet,
            rules: Vec::new(),
            post: Vec::new(),
            step_cap: DEFAULT_STEP_CAP,
        }
    }

    pub fn alphabet(&self) -> &[GenSym] {
        &self.alphabet
    }

    pub fn letter(&self, g: GenSym) -> Letter {
        self.alphabet
            .iter()
            .position(|x| *x == g)
            .unwrap_or_else(|| panic!("{g} not in alphabet")) as Letter
    }

    pub fn rule(&mut self, a: Letter, b: Letter, rhs: Poly<C>) -> &mut Self {
        self.rules.push(RewriteRule { lhs: (a, b), rhs });
        self
    }

    pub fn post_reducer(&mut self, p: Arc<dyn PostReducer<C>>) -> &mut Self {
        self.post.push(p);
        self
    }

    pub fn step_cap(&mut self, cap: usize) -> &mut Self {
        self.step_cap = cap;
        self
    }

    /// Validates the termination witness of every rule and freezes the spec.
    pub fn build(self) -> Result<AlgebraSpec<C>> {
        let nl = self.alphabet.len();
        let mut table: Vec<Option<Poly<C>>> = vec![None; nl * nl];
        let mut index = HashMap::new();
        for (k, g) in self.alphabet.iter().enumerate() {
            if index.insert(*g, k as Letter).is_some() {
                return Err(Error::InadmissibleOrder(format!("duplicate generator {g}")));
            }
        }
        for r in &self.rules {
            let lhs = Word(vec![r.lhs.0, r.lhs.1]);
            for (w, _) in r.rhs.iter() {
                if *w >= lhs {
                    return Err(Error::InadmissibleOrder(format!(
                        "rule {}{} -> ... has term {} not below its left side",
                        self.alphabet[r.lhs.0 as usize],
                        self.alphabet[r.lhs.1 as usize],
                        fmt_word(&self.alphabet, w)
                    )));
                }
            }
            table[r.lhs.0 as usize * nl + r.lhs.1 as usize] = Some(r.rhs.clone());
        }
        Ok(AlgebraSpec {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: self.name,
            alphabet: self.alphabet,
            index,
            rule_list: self.rules,
            table,
            post: self.post,
            memo: Mutex::new(HashMap::new()),
            step_cap: self.step_cap,
        })
    }
}

/// Generator alphabet, two-letter rewrite rules, and optional extra
/// reducers. Normal forms are memoized per word.
pub struct AlgebraSpec<C: Coeff> {
    id: u64,
    name: String,
    alphabet: Vec<GenSym>,
    index: HashMap<GenSym, Letter>,
    rule_list: Vec<RewriteRule<C>>,
    table: Vec<Option<Poly<C>>>,
    post: Vec<Arc<dyn PostReducer<C>>>,
    memo: Mutex<HashMap<Word, Poly<C>>>,
    step_cap: usize,
}

impl<C: Coeff> std::fmt::Debug for AlgebraSpec<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraSpec({}, {} generators, {} rules)", self.name, self.alphabet.len(), self.rule_list.len())
    }
}

fn fmt_word(alphabet: &[GenSym], w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.0.iter().map(|l| alphabet[*l as usize].to_string()).collect()
}

impl<C: Coeff> AlgebraSpec<C> {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[GenSym] {
        &self.alphabet
    }

    pub fn rules(&self) -> &[RewriteRule<C>] {
        &self.rule_list
    }

    pub fn post_reducers(&self) -> &[Arc<dyn PostReducer<C>>] {
        &self.post
    }

    pub fn letter(&self, g: GenSym) -> Result<Letter> {
        self.index
            .get(&g)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(format!("{g} in {}", self.name)))
    }

    pub fn gensym(&self, l: Letter) -> GenSym {
        self.alphabet[l as usize]
    }

    pub fn rule(&self, a: Letter, b: Letter) -> Option<&Poly<C>> {
        self.table[a as usize * self.alphabet.len() + b as usize].as_ref()
    }

    pub fn gen(&self, g: GenSym) -> Result<Poly<C>> {
        Ok(Poly::word(Word::letter(self.letter(g)?)))
    }

    pub fn word_of(&self, gens: &[GenSym]) -> Result<Word> {
        Ok(Word(gens.iter().map(|g| self.letter(*g)).collect::<Result<_>>()?))
    }

    pub fn gens_of(&self, w: &Word) -> Vec<GenSym> {
        w.0.iter().map(|l| self.gensym(*l)).collect()
    }

    fn first_rule_position(&self, w: &[Letter]) -> Option<usize> {
        (0..w.len().saturating_sub(1)).find(|&p| self.rule(w[p], w[p + 1]).is_some())
    }

    fn rule_positions(&self, w: &[Letter]) -> Vec<usize> {
        (0..w.len().saturating_sub(1))
            .filter(|&p| self.rule(w[p], w[p + 1]).is_some())
            .collect()
    }

    fn rewrite_at(&self, w: &Word, p: usize) -> Poly<C> {
        let rhs = self.rule(w.0[p], w.0[p + 1]).expect("rule present");
        let mut out = Poly::zero();
        for (v, c) in rhs.iter() {
            let mut nw = Vec::with_capacity(w.len() - 2 + v.len());
            nw.extend_from_slice(&w.0[..p]);
            nw.extend_from_slice(&v.0);
            nw.extend_from_slice(&w.0[p + 2..]);
            out.add_term(Word(nw), c);
        }
        out
    }

    fn post_reduce(&self, w: &Word) -> Result<Option<Poly<C>>> {
        for pr in &self.post {
            if let Some(rep) = pr.reduce(w)? {
                if let Some(m0) = pr.metric(w) {
                    for (v, _) in rep.iter() {
                        let m1 = pr.metric(v).unwrap_or_default();
                        if m1 >= m0 {
                            return Err(Error::NonTerminating(format!(
                                "{} did not lower its metric on {}",
                                pr.name(),
                                fmt_word(&self.alphabet, w)
                            )));
                        }
                    }
                }
                return Ok(Some(rep));
            }
        }
        Ok(None)
    }

    /// True when no rule and no extra reducer applies.
    pub fn is_normal_word(&self, w: &Word) -> Result<bool> {
        Ok(self.first_rule_position(&w.0).is_none() && self.post_reduce(w)?.is_none())
    }

    fn run_worklist(&self, start: Poly<C>, mut rng: Option<&mut dyn RngCore>, use_memo: bool) -> Result<Poly<C>> {
        let mut work: BTreeMap<Word, C> = start.into_terms();
        let mut out = Poly::zero();
        let mut steps = 0usize;
        loop {
            let next = match rng.as_deref_mut() {
                None => work.pop_last(),
                Some(r) => {
                    if work.is_empty() {
                        None
                    } else {
                        let k = r.gen_range(0..work.len());
                        let key = work.keys().nth(k).cloned().unwrap();
                        work.remove_entry(&key)
                    }
                }
            };
            let Some((u, c)) = next else { break };
            steps += 1;
            if steps > self.step_cap {
                return Err(Error::NonTerminating(format!("{}: step cap {} exceeded", self.name, self.step_cap)));
            }
            if use_memo {
                let hit = self.memo.lock().unwrap().get(&u).cloned();
                if let Some(p) = hit {
                    out.add_scaled(&p, &c);
                    continue;
                }
            }
            let positions = match rng.as_deref_mut() {
                None => self.first_rule_position(&u.0).into_iter().collect::<Vec<_>>(),
                Some(_) => self.rule_positions(&u.0),
            };
            let rep = if positions.is_empty() {
                self.post_reduce(&u)?
            } else {
                let p = match rng.as_deref_mut() {
                    None => positions[0],
                    Some(r) => positions[r.gen_range(0..positions.len())],
                };
                Some(self.rewrite_at(&u, p))
            };
            match rep {
                None => out.add_term(u, &c),
                Some(rep) => {
                    for (v, d) in rep.iter() {
                        let e = work.entry(v.clone()).or_insert_with(C::zero);
                        e.add_assign_ref(&d.times(&c));
                        if e.is_zero() {
                            work.remove(v);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Normal form of a single word (memoized).
    pub fn nf_word(&self, w: &Word) -> Result<Poly<C>> {
        if let Some(p) = self.memo.lock().unwrap().get(w) {
            return Ok(p.clone());
        }
        let out = self.run_worklist(Poly::word(w.clone()), None, true)?;
        self.memo.lock().unwrap().insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn nf(&self, p: &Poly<C>) -> Result<Poly<C>> {
        let mut out = Poly::zero();
        for (w, c) in p.iter() {
            out.add_scaled(&self.nf_word(w)?, c);
        }
        Ok(out)
    }

    /// Normal form computed along a random reduction path, without the memo.
    pub fn nf_random_path(&self, p: &Poly<C>, rng: &mut dyn RngCore) -> Result<Poly<C>> {
        self.run_worklist(p.clone(), Some(rng), false)
    }

    /// Product of two elements followed by normal form.
    pub fn mul(&self, a: &Poly<C>, b: &Poly<C>) -> Result<Poly<C>> {
        let mut out = Poly::zero();
        for (u, x) in a.iter() {
            for (v, y) in b.iter() {
                out.add_scaled(&self.nf_word(&u.concat(v))?, &x.times(y));
            }
        }
        Ok(out)
    }

    pub fn mul_all(&self, factors: &[Poly<C>]) -> Result<Poly<C>> {
        let mut acc = Poly::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &Poly<C>, k: usize) -> Result<Poly<C>> {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, a: &Poly<C>, b: &Poly<C>) -> Result<Poly<C>> {
        Ok(self.mul(a, b)?.minus(&self.mul(b, a)?))
    }

    pub fn memo_size(&self) -> usize {
        self.memo.lock().unwrap().len()
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        fmt_word(&self.alphabet, w)
    }

    /// Human-readable form, terms in descending word order.
    pub fn fmt_poly(&self, p: &Poly<C>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (w, c)) in p.iter().rev().enumerate() {
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let body = if body.contains(' ') || body.contains('/') {
                format!("({body})")
            } else {
                body
            };
            if w.is_empty() {
                s.push_str(&body);
            } else {
                if body != "1" {
                    let _ = write!(s, "{body}*");
                }
                s.push_str(&self.fmt_word(w));
            }
        }
        s
    }

    pub fn poly_to_json(&self, p: &Poly<C>) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = p
            .iter()
            .map(|(w, c)| {
                serde_json::json!({
                    "coeff": c.to_json(),
                    "word": w.0.iter().map(|l| self.gensym(*l).to_json()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "algebra": self.name, "terms": terms })
    }

    /// Every overlap `abc` where both `ab` and `bc` are rule left sides must
    /// resolve to one normal form. `max_overlap` below 3 checks nothing.
    pub fn confluence_check(&self, max_overlap: usize) -> Result<ConfluenceReport<C>> {
        let mut report = ConfluenceReport {
            triples_checked: 0,
            failures: Vec::new(),
        };
        if max_overlap < 3 {
            return Ok(report);
        }
        let nl = self.alphabet.len() as Letter;
        for a in 0..nl {
            for b in 0..nl {
                if self.rule(a, b).is_none() {
                    continue;
                }
                for c in 0..nl {
                    if self.rule(b, c).is_none() {
                        continue;
                    }
                    report.triples_checked += 1;
                    let w = Word(vec![a, b, c]);
                    let left = self.nf(&self.rewrite_at(&w, 0))?;
                    let right = self.nf(&self.rewrite_at(&w, 1))?;
                    if left != right {
                        report.failures.push(ConfluenceFailure { word: w, left, right });
                    }
                }
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug)]
pub struct ConfluenceFailure<C: Coeff> {
    pub word: Word,
    pub left: Poly<C>,
    pub right: Poly<C>,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport<C: Coeff> {
    pub triples_checked: usize,
    pub failures: Vec<ConfluenceFailure<C>>,
}

impl<C: Coeff> ConfluenceReport<C> {
    pub fn is_confluent(&self) -> bool {
        self.failures.is_empty()
    }
}
