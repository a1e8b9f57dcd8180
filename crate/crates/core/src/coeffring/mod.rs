//! Exact coefficients: Z[q, q^-1] and its fraction field.

mod laurent;
mod ratfunc;
mod upoly;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use thiserror::Error;

pub use laurent::LaurentPoly;
pub use ratfunc::{AtOne, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("not divisible by (q-1): remainder {remainder}")]
    NotDivisible { remainder: BigInt },
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient {0} is not a Laurent polynomial")]
    NotLaurent(String),
}

/// The coefficient domains an algebra can be declared over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffDomain {
    Laurent,
    Rational,
}

/// Arithmetic shared by `LaurentPoly` and `RatFunc`, so the rewriting engine
/// can be generic over the coefficient domain.
pub trait Coeff: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    const DOMAIN: CoeffDomain;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_i64(c: i64) -> Self;
    fn q_pow(k: i64) -> Self;
    fn from_laurent(p: &LaurentPoly) -> Self;
    /// Multiplicative inverse inside the domain, if it exists there.
    fn try_inverse(&self) -> Option<Self>;
    fn to_ratfunc(&self) -> RatFunc;
    fn from_ratfunc(r: &RatFunc) -> Result<Self, CoeffError>;
    fn to_json(&self) -> serde_json::Value;

    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.plus(o);
    }
}

impl Coeff for LaurentPoly {
    const DOMAIN: CoeffDomain = CoeffDomain::Laurent;

    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        LaurentPoly::is_one(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn negated(&self) -> Self {
        self.neg_ref()
    }
    fn from_i64(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
    fn q_pow(k: i64) -> Self {
        LaurentPoly::q_pow(k)
    }
    fn from_laurent(p: &LaurentPoly) -> Self {
        p.clone()
    }
    fn try_inverse(&self) -> Option<Self> {
        let (s, k) = self.as_unit()?;
        Some(LaurentPoly::monomial(BigInt::from(s), -k))
    }
    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_laurent(self.clone())
    }
    fn from_ratfunc(r: &RatFunc) -> Result<Self, CoeffError> {
        r.as_laurent()
            .cloned()
            .ok_or_else(|| CoeffError::NotLaurent(r.to_string()))
    }
    fn to_json(&self) -> serde_json::Value {
        LaurentPoly::to_json(self)
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }
}

impl Coeff for RatFunc {
    const DOMAIN: CoeffDomain = CoeffDomain::Rational;

    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn negated(&self) -> Self {
        self.neg_ref()
    }
    fn from_i64(c: i64) -> Self {
        RatFunc::from_int(c)
    }
    fn q_pow(k: i64) -> Self {
        RatFunc::q_pow(k)
    }
    fn from_laurent(p: &LaurentPoly) -> Self {
        RatFunc::from_laurent(p.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn to_ratfunc(&self) -> RatFunc {
        self.clone()
    }
    fn from_ratfunc(r: &RatFunc) -> Result<Self, CoeffError> {
        Ok(r.clone())
    }
    fn to_json(&self) -> serde_json::Value {
        RatFunc::to_json(self)
    }
}

/// (q - q^-1)^k for any integer k, as a rational function.
pub fn q_minus_qinv_pow(k: i64) -> RatFunc {
    RatFunc::from_laurent(LaurentPoly::q_minus_qinv())
        .pow(k)
        .expect("q - q^-1 is nonzero")
}

/// (q - 1)^k for any integer k, as a rational function.
pub fn q_minus_1_pow(k: i64) -> RatFunc {
    RatFunc::from_laurent(LaurentPoly::q_minus_1())
        .pow(k)
        .expect("q - 1 is nonzero")
}
