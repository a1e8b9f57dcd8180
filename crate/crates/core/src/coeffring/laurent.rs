use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::upoly::Dense;
use super::CoeffError;

/// An element of Z[q, q^-1]. Zero coefficients are never stored, so the map
/// itself is the canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: i64) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    pub fn monomial(c: BigInt, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// Builds from (exponent, coefficient) pairs; repeated exponents add.
    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in pairs {
            out.add_term(k, &BigInt::from(c));
        }
        out
    }

    /// q - q^-1, the ubiquitous scaling factor.
    pub fn q_minus_qinv() -> Self {
        Self::from_pairs([(1, 1), (-1, -1)])
    }

    pub fn q_minus_1() -> Self {
        Self::from_pairs([(1, 1), (0, -1)])
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, &-c);
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Value at q = 1, i.e. the sum of all coefficients.
    pub fn evaluate_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact quotient by (q - 1); fails with the remainder (the value at 1).
    pub fn divide_by_q_minus_1(&self) -> Result<Self, CoeffError> {
        let Some(lo) = self.min_exp() else {
            return Ok(Self::zero());
        };
        let p = self.to_dense_shifted(lo);
        // synthetic division from the top coefficient down
        let d = p.len() - 1;
        let mut b = vec![BigInt::zero(); d.max(1)];
        let mut carry = BigInt::zero();
        for k in (1..=d).rev() {
            carry += &p[k];
            b[k - 1] = carry.clone();
        }
        let rem = carry + &p[0];
        if !rem.is_zero() {
            return Err(CoeffError::NotDivisible { remainder: rem });
        }
        Ok(Self::from_dense(&b, lo))
    }

    /// If this is ±q^k, returns (sign, k).
    pub fn as_unit(&self) -> Option<(i64, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((1, *k))
        } else if (-c).is_one() {
            Some((-1, *k))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Coefficients of q^{-shift} * self, ascending, as a dense vector.
    pub(crate) fn to_dense_shifted(&self, shift: i64) -> Dense {
        let Some(hi) = self.max_exp() else {
            return Vec::new();
        };
        let mut v = vec![BigInt::zero(); (hi - shift + 1) as usize];
        for (k, c) in &self.terms {
            v[(k - shift) as usize] = c.clone();
        }
        v
    }

    pub(crate) fn from_dense(v: &[BigInt], shift: i64) -> Self {
        let mut terms = BTreeMap::new();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(i as i64 + shift, c.clone());
            }
        }
        Self { terms }
    }

    pub fn divide_exact_int(&self, c: &BigInt) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, x)| (*k, x / c)).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (k, c) in &self.terms {
            m.insert(k.to_string(), serde_json::Value::String(c.to_string()));
        }
        serde_json::Value::Object(m)
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let obj = v.as_object()?;
        let mut out = Self::zero();
        for (k, c) in obj {
            let k: i64 = k.parse().ok()?;
            let c: BigInt = match c {
                serde_json::Value::String(s) => s.parse().ok()?,
                serde_json::Value::Number(n) => BigInt::from(n.as_i64()?),
                _ => return None,
            };
            out.add_term(k, &c);
        }
        Some(out)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_q_power(k: i64) -> String {
    match k {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{k}"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let qp = fmt_q_power(*k);
            if qp.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{qp}")?;
            } else {
                write!(f, "{abs}*{qp}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: &LaurentPoly) -> LaurentPoly {
                self.$imp(o)
            }
        }
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                self.$imp(&o)
            }
        }
    };
}
forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_orders_by_descending_power() {
        let p = LaurentPoly::from_pairs([(2, 1), (0, -2), (-2, 1)]);
        assert_eq!(p.to_string(), "q^2 - 2 + q^-2");
    }

    #[test]
    fn division_remainder_is_value_at_one() {
        let p = LaurentPoly::from_pairs([(3, 2), (0, 1)]);
        match p.divide_by_q_minus_1() {
            Err(CoeffError::NotDivisible { remainder }) => assert_eq!(remainder, BigInt::from(3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn divide_negative_exponents() {
        // q - q^-1 = (q-1)(1 + q^-1)
        let quot = LaurentPoly::q_minus_qinv().divide_by_q_minus_1().unwrap();
        assert_eq!(quot, LaurentPoly::from_pairs([(0, 1), (-1, 1)]));
    }
}
