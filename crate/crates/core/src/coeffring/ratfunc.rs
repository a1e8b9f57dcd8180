use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use super::upoly;
use super::CoeffError;

/// An element of Q(q), kept as a reduced quotient of Laurent polynomials.
///
/// Canonical shape: `den` has minimal exponent 0 and positive leading
/// coefficient, `num` and `den` share no polynomial factor and no common
/// integer content. Equality of canonical pairs is equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Result of evaluating at q = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtOne {
    Value(BigRational),
    PoleAtOne,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn q_pow(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(k))
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Some(p) when the denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let a = num.min_exp().unwrap();
        let b = den.min_exp().unwrap();
        let mut n0 = num.to_dense_shifted(a);
        let mut d0 = den.to_dense_shifted(b);
        if d0.len() > 1 {
            let g = upoly::gcd(&n0, &d0);
            if g.len() > 1 {
                n0 = upoly::div_exact(&n0, &g).expect("gcd divides numerator");
                d0 = upoly::div_exact(&d0, &g).expect("gcd divides denominator");
            }
        }
        let c = upoly::content(&n0).gcd(&upoly::content(&d0));
        let mut c = if c.is_zero() { BigInt::one() } else { c };
        if d0.last().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            for x in n0.iter_mut() {
                *x = &*x / &c;
            }
            for x in d0.iter_mut() {
                *x = &*x / &c;
            }
        }
        Self {
            num: LaurentPoly::from_dense(&n0, a - b),
            den: LaurentPoly::from_dense(&d0, 0),
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if self.den == o.den {
            let n = self.num.add_ref(&o.num);
            if self.den.is_one() {
                return Self::from_laurent(n);
            }
            return Self::reduce(n, self.den.clone());
        }
        Self::reduce(
            self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den)),
            self.den.mul_ref(&o.den),
        )
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        Self {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_laurent(self.num.mul_ref(&o.num));
        }
        // a unit numerator never shares a factor with anything
        if let Some((s, k)) = self.num.as_unit() {
            if self.den.is_one() {
                return Self {
                    num: o.num.shift(k).scale(&BigInt::from(s)),
                    den: o.den.clone(),
                };
            }
        }
        if let Some((s, k)) = o.num.as_unit() {
            if o.den.is_one() {
                return Self {
                    num: self.num.shift(k).scale(&BigInt::from(s)),
                    den: self.den.clone(),
                };
            }
        }
        Self::reduce(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den))
    }

    pub fn inverse(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div_ref(&self, o: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul_ref(&o.inverse()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self, CoeffError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Ok(acc)
    }

    /// Value at q = 1 when the reduced denominator does not vanish there.
    pub fn regular_at_one(&self) -> AtOne {
        let d = self.den.evaluate_at_one();
        if d.is_zero() {
            return AtOne::PoleAtOne;
        }
        AtOne::Value(BigRational::new(self.num.evaluate_at_one(), d))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let num = LaurentPoly::from_json(v.get("num")?)?;
        let den = LaurentPoly::from_json(v.get("den")?)?;
        Self::new(num, den).ok()
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.len() == 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        self.add_ref(o)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self.sub_ref(o)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        self.mul_ref(o)
    }
}

/// Panics on division by zero; use `div_ref` for the checked form.
impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        self.div_ref(o).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(p.iter().copied())
    }

    #[test]
    fn reduces_common_factor() {
        let r = RatFunc::new(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(r, RatFunc::from_laurent(lp(&[(1, 1), (0, 1)])));
    }

    #[test]
    fn den_normalized_sign_and_shift() {
        let r = RatFunc::new(lp(&[(0, 1)]), lp(&[(-1, -2)])).unwrap();
        // 1 / (-2 q^-1) = -q / 2
        assert_eq!(r.den(), &LaurentPoly::constant(2));
        assert_eq!(r.num(), &lp(&[(1, -1)]));
        let half = RatFunc::new(lp(&[(0, 2)]), lp(&[(0, 4)])).unwrap();
        assert_eq!(half.den(), &LaurentPoly::constant(2));
    }

    #[test]
    fn pole_detection() {
        let r = RatFunc::new(LaurentPoly::one(), LaurentPoly::q_minus_1()).unwrap();
        assert_eq!(r.regular_at_one(), AtOne::PoleAtOne);
    }
}
