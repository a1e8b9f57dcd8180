//! F_q[GL(n+1)] = F_q[M(n+1)][det_q^-1], with det_q powers kept outside the
//! rewriting alphabet (det_q is central and group-like).

use std::sync::Mutex;

use crate::coeffring::Coeff;
use crate::error::Result;
use crate::ncalg::{Poly, Tensor, Word};
use crate::qmatrix::{coproduct_on, counit_on, transport, MatrixAlgebra, MatrixOrder};

use super::{antipode_convention, cofactor, AntipodeConvention, SLAlgebra};

/// body · det_q^detpow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLElement<C: Coeff> {
    pub body: Poly<C>,
    pub detpow: i64,
}

/// body · (det_q^detpow ⊗ det_q^detpow).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLTensor<C: Coeff> {
    pub body: Tensor<C>,
    pub detpow: i64,
}

pub struct GLAlgebra<C: Coeff> {
    base: MatrixAlgebra<C>,
    convention: AntipodeConvention,
    det_powers: Mutex<Vec<Poly<C>>>,
}

impl<C: Coeff> GLAlgebra<C> {
    pub fn new(n: usize, order: MatrixOrder) -> Result<Self> {
        let base = MatrixAlgebra::new(n, order)?;
        Ok(Self {
            base,
            convention: antipode_convention(),
            det_powers: Mutex::new(vec![Poly::one()]),
        })
    }

    pub fn base(&self) -> &MatrixAlgebra<C> {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn element(&self, body: &Poly<C>) -> Result<GLElement<C>> {
        Ok(GLElement {
            body: self.base.nf(body)?,
            detpow: 0,
        })
    }

    pub fn x(&self, i: usize, j: usize) -> GLElement<C> {
        GLElement {
            body: self.base.x(i, j),
            detpow: 0,
        }
    }

    pub fn det(&self) -> GLElement<C> {
        GLElement {
            body: Poly::one(),
            detpow: 1,
        }
    }

    pub fn det_inverse(&self) -> GLElement<C> {
        GLElement {
            body: Poly::one(),
            detpow: -1,
        }
    }

    /// det_q^k expanded in the matrix algebra, k >= 0.
    pub fn det_power_poly(&self, k: usize) -> Result<Poly<C>> {
        let mut cache = self.det_powers.lock().unwrap();
        while cache.len() <= k {
            let next = self.base.mul(cache.last().unwrap(), &self.base.det_q()?)?;
            cache.push(next);
        }
        Ok(cache[k].clone())
    }

    /// Rewrites `a` with a smaller det power by expanding det_q into the body.
    pub fn lower_to(&self, a: &GLElement<C>, detpow: i64) -> Result<Poly<C>> {
        debug_assert!(detpow <= a.detpow);
        let d = self.det_power_poly((a.detpow - detpow) as usize)?;
        self.base.mul(&a.body, &d)
    }

    fn align(&self, a: &GLElement<C>, b: &GLElement<C>) -> Result<(Poly<C>, Poly<C>, i64)> {
        let m = a.detpow.min(b.detpow);
        Ok((self.lower_to(a, m)?, self.lower_to(b, m)?, m))
    }

    pub fn add(&self, a: &GLElement<C>, b: &GLElement<C>) -> Result<GLElement<C>> {
        if a.body.is_zero() {
            return Ok(b.clone());
        }
        if b.body.is_zero() {
            return Ok(a.clone());
        }
        let (x, y, m) = self.align(a, b)?;
        self.canonical(GLElement { body: x.plus(&y), detpow: m })
    }

    pub fn sub(&self, a: &GLElement<C>, b: &GLElement<C>) -> Result<GLElement<C>> {
        let neg = GLElement {
            body: b.body.negated(),
            detpow: b.detpow,
        };
        self.add(a, &neg)
    }

    pub fn mul(&self, a: &GLElement<C>, b: &GLElement<C>) -> Result<GLElement<C>> {
        self.canonical(GLElement {
            body: self.base.mul(&a.body, &b.body)?,
            detpow: a.detpow + b.detpow,
        })
    }

    /// a · det_q^-k.
    pub fn gl_inverse_det(&self, a: &GLElement<C>, k: i64) -> GLElement<C> {
        GLElement {
            body: a.body.clone(),
            detpow: a.detpow - k,
        }
    }

    pub fn equal(&self, a: &GLElement<C>, b: &GLElement<C>) -> Result<bool> {
        let (x, y, _) = self.align(a, b)?;
        Ok(x == y)
    }

    /// Pulls det_q factors out of a body that is a scalar multiple of a det_q
    /// power; other bodies are returned unchanged.
    pub fn canonical(&self, a: GLElement<C>) -> Result<GLElement<C>> {
        if a.body.is_zero() {
            return Ok(GLElement { body: a.body, detpow: 0 });
        }
        let m = self.base.size();
        let d = a.body.max_degree();
        if d == 0 || d % m != 0 || a.body.iter().any(|(w, _)| w.len() != d) {
            return Ok(a);
        }
        let k = d / m;
        let dk = self.det_power_poly(k)?;
        let (w0, c0) = dk.leading().unwrap();
        let Some(inv) = c0.try_inverse() else { return Ok(a) };
        let c = a.body.coeff(w0).times(&inv);
        if !c.is_zero() && dk.scale(&c) == a.body {
            return Ok(GLElement {
                body: Poly::scalar(c),
                detpow: a.detpow + k as i64,
            });
        }
        Ok(a)
    }

    pub fn coproduct(&self, a: &GLElement<C>) -> Result<GLTensor<C>> {
        Ok(GLTensor {
            body: coproduct_on(&a.body, self.base.spec(), self.base.positions(), self.base.size())?,
            detpow: a.detpow,
        })
    }

    pub fn counit(&self, a: &GLElement<C>) -> C {
        counit_on(&a.body, self.base.positions())
    }

    /// S(x_ij) = (-q)^e · cofactor · det_q^-1.
    pub fn antipode_gen(&self, i: usize, j: usize) -> Result<GLElement<C>> {
        Ok(GLElement {
            body: self.base.nf(&cofactor(&self.base, self.convention, i, j)?)?,
            detpow: -1,
        })
    }

    pub fn antipode(&self, a: &GLElement<C>) -> Result<GLElement<C>> {
        let mut out = GLElement {
            body: Poly::zero(),
            detpow: 0,
        };
        for (w, c) in a.body.iter() {
            let mut img = GLElement {
                body: Poly::one(),
                detpow: 0,
            };
            for l in w.0.iter().rev() {
                let (i, j) = self.base.entry(*l);
                img = self.mul(&img, &self.antipode_gen(i, j)?)?;
            }
            img.body = img.body.scale(c);
            out = self.add(&out, &img)?;
        }
        out.detpow -= a.detpow;
        self.canonical(out)
    }

    /// m∘(S⊗id)∘Δ and m∘(id⊗S)∘Δ applied to x_ij.
    pub fn antipode_axiom(&self, i: usize, j: usize) -> Result<(GLElement<C>, GLElement<C>)> {
        let d = self.coproduct(&self.x(i, j))?;
        let zero = GLElement {
            body: Poly::zero(),
            detpow: 0,
        };
        let (mut left, mut right) = (zero.clone(), zero);
        for (k, c) in d.body.iter() {
            let a = self.word(&k[0]).scaled(c);
            let b = self.word(&k[1]);
            left = self.add(&left, &self.mul(&self.antipode(&a)?, &b)?)?;
            right = self.add(&right, &self.mul(&a, &self.antipode(&b)?)?)?;
        }
        Ok((left, right))
    }

    fn word(&self, w: &Word) -> GLElement<C> {
        GLElement {
            body: Poly::word(w.clone()),
            detpow: 0,
        }
    }

    /// π: x_ij ↦ ρ_ij, det_q ↦ 1.
    pub fn pi_project(&self, a: &GLElement<C>, sl: &SLAlgebra<C>) -> Result<Poly<C>> {
        let moved = transport(&a.body, self.base.spec(), sl.spec(), false)?;
        sl.nf(&moved)
    }
}

impl<C: Coeff> GLElement<C> {
    pub fn scaled(&self, c: &C) -> Self {
        Self {
            body: self.body.scale(c),
            detpow: self.detpow,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
}
