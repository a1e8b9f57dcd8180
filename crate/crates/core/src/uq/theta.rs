//! ϑ±: F_q[B±] -> U_q^P(b∓), the map μ_P = (ϑ+ ⊗ ϑ-)(ρ+ ⊗ ρ-)Δ and its
//! toral collapse at q = 1.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::Zero;

use super::{to_ratfunc_poly, UqAlgebra, P};
use crate::coeffring::{AtOne, Coeff, LaurentPoly, RatFunc};
use crate::error::{Error, Result};
use crate::ncalg::{algebra_map, Poly, Tensor, Word};
use crate::qsl::{BorelAlgebra, BorelSign, SLAlgebra};

/// U_q(gl(n+1)) together with both Borel quotients and the ϑ images of
/// their generators (images live in the P-form, G_{n+1} = L_n^-1).
pub struct ThetaMaps {
    uq: UqAlgebra,
    plus: BorelAlgebra<LaurentPoly>,
    minus: BorelAlgebra<LaurentPoly>,
    images: Mutex<HashMap<(BorelSign, usize, usize), P>>,
}

fn qq() -> RatFunc {
    RatFunc::from_laurent(LaurentPoly::q_minus_qinv())
}

impl ThetaMaps {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self {
            uq: UqAlgebra::new(n)?,
            plus: BorelAlgebra::new(n, BorelSign::Plus)?,
            minus: BorelAlgebra::new(n, BorelSign::Minus)?,
            images: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.uq.n()
    }

    pub fn uq(&self) -> &UqAlgebra {
        &self.uq
    }

    pub fn borel(&self, sign: BorelSign) -> &BorelAlgebra<LaurentPoly> {
        match sign {
            BorelSign::Plus => &self.plus,
            BorelSign::Minus => &self.minus,
        }
    }

    /// ϑ±(ρ_ij). Adjacent and diagonal entries follow the defining formulas;
    /// the others are forced by the Borel relation
    /// ρ_{i,j-1}ρ_{j-1,j} - ρ_{j-1,j}ρ_{i,j-1} = (q - q^-1) ρ_{ij} ρ_{j-1,j-1}
    /// (and its mirror in B-).
    pub fn gen_image(&self, sign: BorelSign, i: usize, j: usize) -> Result<P> {
        let n = self.n();
        if !sign.keeps(i, j) || i > n + 1 || j > n + 1 || i == 0 || j == 0 {
            return Err(Error::NotInBorel(format!("ρ[{i},{j}] in {}", sign.name())));
        }
        if let Some(p) = self.images.lock().unwrap().get(&(sign, i, j)) {
            return Ok(p.clone());
        }
        let uq = &self.uq;
        let img = match sign {
            BorelSign::Plus if i == j => uq.project_p(&uq.g_inv(i))?,
            BorelSign::Minus if i == j => uq.project_p(&uq.g(i))?,
            BorelSign::Plus if j == i + 1 => {
                let p = uq.mul(&uq.f(i), &uq.g_inv(i + 1))?.scale(&qq().neg_ref());
                uq.project_p(&p)?
            }
            BorelSign::Minus if i == j + 1 => {
                let p = uq.mul(&uq.g(i), &uq.e(j))?.scale(&qq());
                uq.project_p(&p)?
            }
            BorelSign::Plus => {
                let a = self.gen_image(sign, i, j - 1)?;
                let b = self.gen_image(sign, j - 1, j)?;
                let dinv = uq.project_p(&uq.g(j - 1))?;
                let c = uq.commutator_of(&a, &b)?;
                uq.mul(&c, &dinv)?.scale(&qq().inverse()?)
            }
            BorelSign::Minus => {
                // ρ_{ij} with i > j + 1
                let a = self.gen_image(sign, i - 1, j)?;
                let b = self.gen_image(sign, i, i - 1)?;
                let dinv = uq.project_p(&uq.g_inv(i - 1))?;
                let c = uq.commutator_of(&a, &b)?;
                uq.mul(&dinv, &c)?.scale(&qq().inverse()?)
            }
        };
        self.images.lock().unwrap().insert((sign, i, j), img.clone());
        Ok(img)
    }

    /// ϑ± on an element of F_q[B±].
    pub fn theta(&self, sign: BorelSign, a: &Poly<LaurentPoly>) -> Result<P> {
        let b = self.borel(sign);
        let a = to_ratfunc_poly(&b.nf(a)?);
        let spec = b.spec().clone();
        algebra_map(&a, self.uq.spec(), &mut |l| {
            let g = spec.gensym(l);
            self.gen_image(sign, g.i(), g.j())
        })
    }

    /// μ_P(a) = (ϑ+ ⊗ ϑ-)(ρ+ ⊗ ρ-)Δ(a).
    pub fn mu_p(&self, sl: &SLAlgebra<LaurentPoly>, a: &Poly<LaurentPoly>) -> Result<Tensor<RatFunc>> {
        let delta = sl.coproduct(a)?;
        let mut out = Tensor::zero(2);
        let mut cache: HashMap<(bool, Word), P> = HashMap::new();
        let mut side = |minus: bool, w: &Word| -> Result<P> {
            if let Some(p) = cache.get(&(minus, w.clone())) {
                return Ok(p.clone());
            }
            let sign = if minus { BorelSign::Minus } else { BorelSign::Plus };
            let b = self.borel(sign).borel_quotient(&Poly::word(w.clone()), sl.spec())?;
            let img = self.theta(sign, &b)?;
            cache.insert((minus, w.clone()), img.clone());
            Ok(img)
        };
        for (ws, c) in delta.iter() {
            let l = side(false, &ws[0])?;
            if l.is_zero() {
                continue;
            }
            let r = side(true, &ws[1])?;
            out.add_scaled(&Tensor::outer(&l, &r), &RatFunc::from_laurent(c.clone()));
        }
        Ok(out)
    }

    /// Δ^op(ϑ(ρ_ij)) - (ϑ ⊗ ϑ)Δ(ρ_ij), computed in the P-form.
    pub fn coalgebra_defect(&self, sign: BorelSign, i: usize, j: usize) -> Result<Tensor<RatFunc>> {
        let uq = &self.uq;
        let img = self.gen_image(sign, i, j)?;
        let lhs = uq.project_p_tensor(&uq.coproduct(&img)?)?.swap();
        let b = self.borel(sign);
        let delta = b.coproduct(&b.x(i, j)?)?;
        let mut rhs = Tensor::zero(2);
        for (ws, c) in delta.iter() {
            let l = self.theta(sign, &Poly::word(ws[0].clone()))?;
            let r = self.theta(sign, &Poly::word(ws[1].clone()))?;
            rhs.add_scaled(&Tensor::outer(&l, &r), &RatFunc::from_laurent(c.clone()));
        }
        Ok(lhs.minus(&rhs))
    }
}

impl UqAlgebra {
    pub(crate) fn commutator_of(&self, a: &P, b: &P) -> Result<P> {
        self.spec.commutator(a, b)
    }
}

pub fn theta_map(maps: &ThetaMaps, sign: BorelSign, a: &Poly<LaurentPoly>) -> Result<P> {
    maps.theta(sign, a)
}

pub fn mu_p(maps: &ThetaMaps, sl: &SLAlgebra<LaurentPoly>, a: &Poly<LaurentPoly>) -> Result<Tensor<RatFunc>> {
    maps.mu_p(sl, a)
}

/// An element of U ⊗ U at q = 1 with the torus collapsed: keys are the
/// (F-word·E-word) skeletons of the two factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollapsedTensor {
    pub terms: BTreeMap<(Word, Word), BigRational>,
}

impl CollapsedTensor {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: &BigRational) {
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

    pub fn fmt_with(&self, uq: &UqAlgebra) -> String {
        let show = |w: &Word| if w.is_empty() { "1".to_string() } else { uq.spec().fmt_word(w) };
        crate::classical::pbw::fmt_terms(self.terms.iter().map(|((a, b), c)| (format!("{} ⊗ {}", show(a), show(b)), c)))
    }

    pub fn to_json(&self, uq: &UqAlgebra) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let f = |w: &Word| uq.spec().gens_of(w).iter().map(|g| g.to_json()).collect::<Vec<_>>();
                serde_json::json!({ "coeff": c.to_string(), "factors": [f(a), f(b)] })
            })
            .collect();
        serde_json::json!({ "algebra": "U⊗U at q=1, torus collapsed", "terms": terms })
    }
}

/// Sums coefficients over torus monomials for each (F,E)-skeleton pair and
/// evaluates at q = 1.
pub fn collapse_at_one(uq: &UqAlgebra, t: &Tensor<RatFunc>) -> Result<CollapsedTensor> {
    let mut sums: BTreeMap<(Word, Word), RatFunc> = BTreeMap::new();
    for (ws, c) in t.iter() {
        let skel = |w: &Word| Word(w.0.iter().copied().filter(|l| uq.torus(*l).is_none()).collect());
        let k = (skel(&ws[0]), skel(&ws[1]));
        let e = sums.entry(k).or_insert_with(RatFunc::zero);
        *e = e.plus(c);
    }
    let mut out = CollapsedTensor::default();
    for ((a, b), c) in sums {
        match c.regular_at_one() {
            AtOne::Value(v) => out.add_term(a, b, &v),
            AtOne::PoleAtOne => {
                let show = |w: &Word| uq.spec().fmt_word(w);
                return Err(Error::PoleAtOne(format!("{} ⊗ {}: {c}", show(&a), show(&b))));
            }
        }
    }
    Ok(out)
}
