//! Linear algebra on one multigraded piece of a free algebra modulo a
//! homogeneous ideal. Used for blocks (q-Serre) where completing a rewriting
//! system would be overkill.

use std::collections::{BTreeMap, HashMap};

use super::word::{Letter, Poly, Word};
use crate::coeffring::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub multidegree: Vec<usize>,
    pub word_count: usize,
    pub ideal_dim: usize,
    /// Standard words: those that are not the largest word of any ideal element.
    pub basis: Vec<Word>,
    reduce: HashMap<Word, Poly<RatFunc>>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_standard(&self, w: &Word) -> bool {
        !self.reduce.contains_key(w)
    }

    /// Image of a word of this multidegree in the span of the standard words.
    pub fn project(&self, w: &Word) -> Poly<RatFunc> {
        match self.reduce.get(w) {
            Some(p) => p.clone(),
            None => Poly::word(w.clone()),
        }
    }
}

/// Multidegree of `w` with respect to `letters` (slot k counts letters[k]).
pub fn multidegree_of(letters: &[Letter], w: &Word) -> Option<Vec<usize>> {
    let mut d = vec![0; letters.len()];
    for l in &w.0 {
        let k = letters.iter().position(|x| x == l)?;
        d[k] += 1;
    }
    Some(d)
}

fn multinomial(counts: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut total: u128 = 0;
    for &c in counts {
        for k in 1..=c as u128 {
            total += 1;
            acc = acc * total / k;
        }
    }
    acc
}

/// All words with the given letter counts, in ascending order.
pub fn words_of_multidegree(letters: &[Letter], counts: &[usize]) -> Vec<Word> {
    fn rec(letters: &[Letter], counts: &mut [usize], cur: &mut Vec<Letter>, left: usize, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        for k in 0..letters.len() {
            if counts[k] > 0 {
                counts[k] -= 1;
                cur.push(letters[k]);
                rec(letters, counts, cur, left - 1, out);
                cur.pop();
                counts[k] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut c = counts.to_vec();
    let total = counts.iter().sum();
    rec(letters, &mut c, &mut Vec::new(), total, &mut out);
    out.sort();
    out
}

/// Computes a complement basis of the ideal piece spanned by all u·r·v of
/// the requested multidegree, together with the projection onto it.
pub fn graded_component_basis(
    letters: &[Letter],
    relations: &[Poly<RatFunc>],
    multideg: &[usize],
    cap: usize,
) -> Result<GradedPiece> {
    let count = multinomial(multideg);
    if count > cap as u128 {
        return Err(Error::DimensionOverflow {
            words: count.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    let mut words = words_of_multidegree(letters, multideg);
    words.reverse(); // column 0 is the largest word
    let col: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();

    let mut pivots: BTreeMap<usize, BTreeMap<usize, RatFunc>> = BTreeMap::new();
    for rel in relations {
        let Some((w0, _)) = rel.leading() else { continue };
        let Some(dr) = multidegree_of(letters, w0) else { continue };
        if dr.iter().zip(multideg).any(|(a, b)| a > b) {
            continue;
        }
        let rest: Vec<usize> = multideg.iter().zip(&dr).map(|(a, b)| a - b).collect();
        for outer in words_of_multidegree(letters, &rest) {
            for split in 0..=outer.len() {
                let u = Word(outer.0[..split].to_vec());
                let v = Word(outer.0[split..].to_vec());
                let mut row: BTreeMap<usize, RatFunc> = BTreeMap::new();
                for (w, c) in rel.iter() {
                    let full = u.concat(w).concat(&v);
                    let k = col[&full];
                    let e = row.entry(k).or_insert_with(RatFunc::zero);
                    *e = e.add_ref(c);
                    if e.is_zero() {
                        row.remove(&k);
                    }
                }
                insert_row(&mut pivots, row);
            }
        }
    }

    // back substitution, smallest words first
    let pivot_cols: Vec<usize> = pivots.keys().rev().copied().collect();
    for p in pivot_cols {
        let mut row = pivots.remove(&p).unwrap();
        let others: Vec<usize> = row.keys().copied().filter(|k| *k != p && pivots.contains_key(k)).collect();
        for k in others {
            let f = row.get(&k).cloned();
            if let Some(f) = f {
                axpy(&mut row, &pivots[&k], &f.neg_ref());
            }
        }
        pivots.insert(p, row);
    }

    let mut reduce = HashMap::new();
    for (p, row) in &pivots {
        let mut img = Poly::zero();
        for (k, c) in row {
            if k != p {
                img.add_term(words[*k].clone(), &c.neg_ref());
            }
        }
        reduce.insert(words[*p].clone(), img);
    }
    let mut basis: Vec<Word> = words.iter().enumerate().filter(|(k, _)| !pivots.contains_key(k)).map(|(_, w)| w.clone()).collect();
    basis.sort();
    Ok(GradedPiece {
        multidegree: multideg.to_vec(),
        word_count: words.len(),
        ideal_dim: pivots.len(),
        basis,
        reduce,
    })
}

fn axpy(row: &mut BTreeMap<usize, RatFunc>, other: &BTreeMap<usize, RatFunc>, f: &RatFunc) {
    for (k, c) in other {
        let e = row.entry(*k).or_insert_with(RatFunc::zero);
        *e = e.add_ref(&c.mul_ref(f));
        if e.is_zero() {
            row.remove(k);
        }
    }
}

fn insert_row(pivots: &mut BTreeMap<usize, BTreeMap<usize, RatFunc>>, mut row: BTreeMap<usize, RatFunc>) {
    loop {
        let Some((&lead, c)) = row.iter().next() else { return };
        match pivots.get(&lead) {
            Some(prow) => {
                let f = c.neg_ref();
                axpy(&mut row, prow, &f);
            }
            None => {
                let inv = c.inverse().expect("nonzero pivot");
                for v in row.values_mut() {
                    *v = v.mul_ref(&inv);
                }
                pivots.insert(lead, row);
                return;
            }
        }
    }
}
