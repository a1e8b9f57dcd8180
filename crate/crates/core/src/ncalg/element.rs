use std::fmt;
use std::sync::Arc;

use super::spec::AlgebraSpec;
use super::word::{Poly, Word};
use crate::coeffring::Coeff;
use crate::error::{Error, Result};

/// A normalized element tagged with the algebra it lives in.
#[derive(Clone)]
pub struct NCElement<C: Coeff> {
    spec: Arc<AlgebraSpec<C>>,
    poly: Poly<C>,
}

impl<C: Coeff> NCElement<C> {
    /// Normalizes `poly` in `spec`.
    pub fn new(spec: &Arc<AlgebraSpec<C>>, poly: &Poly<C>) -> Result<Self> {
        Ok(Self {
            spec: spec.clone(),
            poly: spec.nf(poly)?,
        })
    }

    pub fn one(spec: &Arc<AlgebraSpec<C>>) -> Self {
        Self {
            spec: spec.clone(),
            poly: Poly::one(),
        }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec<C>> {
        &self.spec
    }

    pub fn poly(&self) -> &Poly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> Poly<C> {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.spec.id() != o.spec.id() {
            return Err(Error::AlgebraMismatch(self.spec.name().into(), o.spec.name().into()));
        }
        Ok(())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self {
            spec: self.spec.clone(),
            poly: self.spec.mul(&self.poly, &o.poly)?,
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self {
            spec: self.spec.clone(),
            poly: self.poly.plus(&o.poly),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self {
            spec: self.spec.clone(),
            poly: self.poly.minus(&o.poly),
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        Self {
            spec: self.spec.clone(),
            poly: self.poly.scale(c),
        }
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.poly.coeff(w)
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.spec.poly_to_json(&self.poly)
    }
}

impl<C: Coeff> PartialEq for NCElement<C> {
    fn eq(&self, o: &Self) -> bool {
        self.spec.id() == o.spec.id() && self.poly == o.poly
    }
}

impl<C: Coeff> fmt::Display for NCElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec.fmt_poly(&self.poly))
    }
}

impl<C: Coeff> fmt::Debug for NCElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.spec.name(), self.spec.fmt_poly(&self.poly))
    }
}
