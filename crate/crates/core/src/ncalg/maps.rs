//! Homomorphisms defined on generators and extended to words.

use std::collections::HashMap;

use super::spec::AlgebraSpec;
use super::tensor::Tensor;
use super::word::{Letter, Poly, Word};
use crate::coeffring::Coeff;
use crate::error::Result;

/// Extends `image` (given on letters) to an algebra map into `target`.
/// Word images are cached by prefix within one call.
pub fn algebra_map<C: Coeff>(
    p: &Poly<C>,
    target: &AlgebraSpec<C>,
    image: &mut dyn FnMut(Letter) -> Result<Poly<C>>,
) -> Result<Poly<C>> {
    let mut letters: HashMap<Letter, Poly<C>> = HashMap::new();
    let mut words: HashMap<Word, Poly<C>> = HashMap::new();
    let mut out = Poly::zero();
    for (w, c) in p.iter() {
        let img = word_image(w, target, image, &mut letters, &mut words, false)?;
        out.add_scaled(&img, c);
    }
    Ok(out)
}

/// As `algebra_map` but reversing products (an anti-homomorphism).
pub fn anti_algebra_map<C: Coeff>(
    p: &Poly<C>,
    target: &AlgebraSpec<C>,
    image: &mut dyn FnMut(Letter) -> Result<Poly<C>>,
) -> Result<Poly<C>> {
    let mut letters: HashMap<Letter, Poly<C>> = HashMap::new();
    let mut words: HashMap<Word, Poly<C>> = HashMap::new();
    let mut out = Poly::zero();
    for (w, c) in p.iter() {
        let img = word_image(w, target, image, &mut letters, &mut words, true)?;
        out.add_scaled(&img, c);
    }
    Ok(out)
}

fn word_image<C: Coeff>(
    w: &Word,
    target: &AlgebraSpec<C>,
    image: &mut dyn FnMut(Letter) -> Result<Poly<C>>,
    letters: &mut HashMap<Letter, Poly<C>>,
    words: &mut HashMap<Word, Poly<C>>,
    reverse: bool,
) -> Result<Poly<C>> {
    if w.is_empty() {
        return Ok(Poly::one());
    }
    if let Some(p) = words.get(w) {
        return Ok(p.clone());
    }
    let last = *w.0.last().unwrap();
    let prefix = Word(w.0[..w.len() - 1].to_vec());
    let head = word_image(&prefix, target, image, letters, words, reverse)?;
    if !letters.contains_key(&last) {
        let img = image(last)?;
        letters.insert(last, img);
    }
    let tail = &letters[&last];
    let res = if reverse {
        target.mul(tail, &head)?
    } else {
        target.mul(&head, tail)?
    };
    words.insert(w.clone(), res.clone());
    Ok(res)
}

/// Extends `image` to an algebra map into a tensor product of algebras.
pub fn tensor_algebra_map<C: Coeff>(
    p: &Poly<C>,
    targets: &[&AlgebraSpec<C>],
    image: &mut dyn FnMut(Letter) -> Result<Tensor<C>>,
) -> Result<Tensor<C>> {
    let arity = targets.len();
    let mut letters: HashMap<Letter, Tensor<C>> = HashMap::new();
    let mut words: HashMap<Word, Tensor<C>> = HashMap::new();
    let mut out = Tensor::zero(arity);
    for (w, c) in p.iter() {
        let img = tensor_word_image(w, targets, image, &mut letters, &mut words)?;
        out.add_scaled(&img, c);
    }
    Ok(out)
}

fn tensor_word_image<C: Coeff>(
    w: &Word,
    targets: &[&AlgebraSpec<C>],
    image: &mut dyn FnMut(Letter) -> Result<Tensor<C>>,
    letters: &mut HashMap<Letter, Tensor<C>>,
    words: &mut HashMap<Word, Tensor<C>>,
) -> Result<Tensor<C>> {
    if w.is_empty() {
        return Ok(Tensor::unit(targets.len()));
    }
    if let Some(t) = words.get(w) {
        return Ok(t.clone());
    }
    let last = *w.0.last().unwrap();
    let prefix = Word(w.0[..w.len() - 1].to_vec());
    let head = tensor_word_image(&prefix, targets, image, letters, words)?;
    if !letters.contains_key(&last) {
        let img = image(last)?;
        letters.insert(last, img);
    }
    let res = head.mul(&letters[&last], targets)?;
    words.insert(w.clone(), res.clone());
    Ok(res)
}

/// Extends a scalar-valued map on letters multiplicatively (e.g. a counit).
pub fn character<C: Coeff>(p: &Poly<C>, value: &dyn Fn(Letter) -> C) -> C {
    let mut out = C::zero();
    for (w, c) in p.iter() {
        let mut v = c.clone();
        for l in &w.0 {
            v = v.times(&value(*l));
            if v.is_zero() {
                break;
            }
        }
        out.add_assign_ref(&v);
    }
    out
}
