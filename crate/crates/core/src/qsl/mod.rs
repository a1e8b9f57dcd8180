//! F_q[SL(n+1)], F_q[GL(n+1)] and the Borel quotients, built on the matrix
//! bialgebra with an extra det_q = 1 reducer.

mod borel;
mod gl;

use std::sync::{Arc, OnceLock};

use crate::coeffring::{Coeff, LaurentPoly};
use crate::error::{Error, Result};
use crate::ncalg::{anti_algebra_map, AlgebraSpec, Letter, PostReducer, Poly, Tensor, Word};
use crate::qmatrix::{coproduct_on, counit_on, matrix_builder, ordered_monomials, quantum_minor_in, transport, MatrixAlgebra, MatrixOrder};

pub use borel::{BorelAlgebra, BorelSign};
pub use gl::{GLAlgebra, GLElement, GLTensor};

/// Which product of special generators the det_q = 1 relation eliminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlStrategy {
    /// Antidiagonal product, antidiag order; canonical words miss at least one
    /// antidiagonal letter.
    Antidiag73,
    /// Diagonal product, triangular order; canonical words miss at least one
    /// diagonal letter.
    Diagonal74,
}

impl SlStrategy {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "antidiag73" => Some(Self::Antidiag73),
            "diagonal74" => Some(Self::Diagonal74),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Antidiag73 => "antidiag73",
            Self::Diagonal74 => "diagonal74",
        }
    }

    pub fn order(self) -> MatrixOrder {
        match self {
            Self::Antidiag73 => MatrixOrder::Antidiag,
            Self::Diagonal74 => MatrixOrder::Triangular,
        }
    }

    fn special(self, n: usize) -> Vec<(usize, usize)> {
        let m = n + 1;
        match self {
            Self::Antidiag73 => (1..=m).map(|i| (i, m + 1 - i)).collect(),
            Self::Diagonal74 => (1..=m).map(|i| (i, i)).collect(),
        }
    }
}

/// Sign of the exponent e in S(x_ij) = (-q)^e · (minor without row j, column i).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntipodeConvention {
    /// e = i - j.
    IMinusJ,
    /// e = j - i.
    JMinusI,
}

impl AntipodeConvention {
    pub fn exponent(self, i: usize, j: usize) -> i64 {
        match self {
            Self::IMinusJ => i as i64 - j as i64,
            Self::JMinusI => j as i64 - i as i64,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::IMinusJ => "(-q)^(i-j)",
            Self::JMinusI => "(-q)^(j-i)",
        }
    }
}

/// Replaces a word containing every special letter: with w = s·w' (s the
/// special product read through the matrix relations) and det_q·w' = c·w + R,
/// det_q = 1 gives w = c^-1 (w' - R).
struct DetReducer<C: Coeff> {
    base: Arc<AlgebraSpec<C>>,
    special: Vec<Letter>,
    det: Poly<C>,
    positions: Vec<(usize, usize)>,
    strategy: SlStrategy,
}

impl<C: Coeff> PostReducer<C> for DetReducer<C> {
    fn name(&self) -> &str {
        self.strategy.name()
    }

    fn reduce(&self, w: &Word) -> Result<Option<Poly<C>>> {
        let mut rest = w.0.clone();
        for s in &self.special {
            match rest.iter().position(|l| l == s) {
                Some(p) => {
                    rest.remove(p);
                }
                None => return Ok(None),
            }
        }
        let wp = Poly::word(Word(rest));
        let p = self.base.mul(&self.det, &wp)?;
        let c = p.coeff(w);
        let inv = c.try_inverse().ok_or_else(|| {
            Error::NonTerminating(format!("{}: non-unit leading coefficient {c}", self.strategy.name()))
        })?;
        let mut rep = wp.minus(&p).scale(&inv);
        rep.add_term(w.clone(), &C::one());
        Ok(Some(rep))
    }

    fn metric(&self, w: &Word) -> Option<Vec<i64>> {
        match self.strategy {
            SlStrategy::Diagonal74 => {
                let spread: i64 = w
                    .0
                    .iter()
                    .map(|l| {
                        let (i, j) = self.positions[*l as usize];
                        (i as i64 - j as i64).pow(2)
                    })
                    .sum();
                Some(vec![w.len() as i64, -spread])
            }
            SlStrategy::Antidiag73 => None,
        }
    }
}

pub struct SLAlgebra<C: Coeff> {
    n: usize,
    strategy: SlStrategy,
    base: MatrixAlgebra<C>,
    spec: Arc<AlgebraSpec<C>>,
    convention: AntipodeConvention,
}

impl<C: Coeff> SLAlgebra<C> {
    pub fn new(n: usize, strategy: SlStrategy) -> Result<Self> {
        Self::new_with_convention(n, strategy, antipode_convention())
    }

    /// Construction with an explicit antipode sign convention.
    pub fn new_with_convention(n: usize, strategy: SlStrategy, conv: AntipodeConvention) -> Result<Self> {
        let base = MatrixAlgebra::<C>::new(n, strategy.order())?;
        let positions = base.positions().to_vec();
        let mut b = matrix_builder::<C>(&format!("SL({})/{}", n + 1, strategy.name()), &positions);
        let special = strategy.special(n).iter().map(|&(i, j)| base.letter(i, j)).collect();
        b.post_reducer(Arc::new(DetReducer {
            base: base.spec().clone(),
            special,
            det: base.det_q()?,
            positions,
            strategy,
        }));
        Ok(Self {
            n,
            strategy,
            spec: Arc::new(b.build()?),
            base,
            convention: conv,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strategy(&self) -> SlStrategy {
        self.strategy
    }

    pub fn base(&self) -> &MatrixAlgebra<C> {
        &self.base
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec<C>> {
        &self.spec
    }

    pub fn antipode_convention(&self) -> AntipodeConvention {
        self.convention
    }

    pub fn x(&self, i: usize, j: usize) -> Poly<C> {
        self.base.x(i, j)
    }

    pub fn letter(&self, i: usize, j: usize) -> Letter {
        self.base.letter(i, j)
    }

    /// Full normal form: matrix relations plus det_q = 1.
    pub fn nf(&self, a: &Poly<C>) -> Result<Poly<C>> {
        self.spec.nf(a)
    }

    /// Applies the det_q = 1 substitution to an element already in the base
    /// normal form (the result is the full normal form either way).
    pub fn sl_reduce(&self, a: &Poly<C>) -> Result<Poly<C>> {
        self.spec.nf(a)
    }

    pub fn mul(&self, a: &Poly<C>, b: &Poly<C>) -> Result<Poly<C>> {
        self.spec.mul(a, b)
    }

    /// True when the word misses at least one special letter.
    pub fn is_canonical_word(&self, w: &Word) -> bool {
        self.strategy
            .special(self.n)
            .iter()
            .any(|&(i, j)| !w.0.contains(&self.letter(i, j)))
    }

    pub fn coproduct(&self, a: &Poly<C>) -> Result<Tensor<C>> {
        coproduct_on(a, &self.spec, self.base.positions(), self.n + 1)
    }

    pub fn counit(&self, a: &Poly<C>) -> C {
        counit_on(a, self.base.positions())
    }

    /// Image of a generator under S, in normal form.
    pub fn antipode_gen(&self, i: usize, j: usize) -> Result<Poly<C>> {
        let minor = cofactor(&self.base, self.convention, i, j)?;
        self.nf(&minor)
    }

    pub fn antipode(&self, a: &Poly<C>) -> Result<Poly<C>> {
        let positions = self.base.positions().to_vec();
        anti_algebra_map(a, &self.spec, &mut |l| {
            let (i, j) = positions[l as usize];
            self.antipode_gen(i, j)
        })
    }

    /// m∘(S⊗id)∘Δ and m∘(id⊗S)∘Δ applied to x_ij.
    pub fn antipode_axiom(&self, i: usize, j: usize) -> Result<(Poly<C>, Poly<C>)> {
        let d = self.coproduct(&self.x(i, j))?;
        let mut left = Poly::zero();
        let mut right = Poly::zero();
        for (k, c) in d.iter() {
            let a = Poly::word(k[0].clone());
            let b = Poly::word(k[1].clone());
            left.add_scaled(&self.mul(&self.antipode(&a)?, &b)?, c);
            right.add_scaled(&self.mul(&a, &self.antipode(&b)?)?, c);
        }
        Ok((left, right))
    }

    /// Enumerates the canonical ordered monomials of degree at most `degree`.
    pub fn pbw_basis_sl(&self, degree: usize) -> Vec<Word> {
        ordered_monomials(self.base.positions().len(), degree)
            .into_iter()
            .filter(|w| self.is_canonical_word(w))
            .collect()
    }

    /// Number of canonical monomials of each exact degree 0..=degree.
    pub fn pbw_counts(&self, degree: usize) -> Vec<usize> {
        let mut out = vec![0; degree + 1];
        for w in self.pbw_basis_sl(degree) {
            out[w.len()] += 1;
        }
        out
    }

    /// Moves an element from another algebra with x[i,j] generators (matrix,
    /// other SL strategy) into this one and reduces.
    pub fn import(&self, a: &Poly<C>, from: &AlgebraSpec<C>) -> Result<Poly<C>> {
        transport(a, from, &self.spec, false)
    }
}

/// (-q)^e times the quantum minor of `alg` without row j and column i.
pub(crate) fn cofactor<C: Coeff>(alg: &MatrixAlgebra<C>, conv: AntipodeConvention, i: usize, j: usize) -> Result<Poly<C>> {
    let m = alg.size();
    let rows: Vec<usize> = (1..=m).filter(|&h| h != j).collect();
    let cols: Vec<usize> = (1..=m).filter(|&k| k != i).collect();
    let minor = quantum_minor_in(alg.spec(), m, &rows, &cols)?;
    let e = conv.exponent(i, j);
    let mq = LaurentPoly::from_pairs([(1, -1)]);
    let s = if e >= 0 {
        mq.pow(e as u32)
    } else {
        LaurentPoly::from_pairs([(-1, -1)]).pow((-e) as u32)
    };
    Ok(minor.scale(&C::from_laurent(&s)))
}

/// Runs the antipode axiom on every generator of SL(2) for both sign
/// conventions and returns the one that satisfies it (computed once).
pub fn antipode_convention() -> AntipodeConvention {
    static CHOSEN: OnceLock<AntipodeConvention> = OnceLock::new();
    *CHOSEN.get_or_init(|| {
        for conv in [AntipodeConvention::JMinusI, AntipodeConvention::IMinusJ] {
            if convention_holds(conv).unwrap_or(false) {
                return conv;
            }
        }
        AntipodeConvention::IMinusJ
    })
}

/// Checks the antipode axiom at n = 1 with the given convention.
pub fn convention_holds(conv: AntipodeConvention) -> Result<bool> {
    let alg = SLAlgebra::<LaurentPoly>::new_with_convention(1, SlStrategy::Diagonal74, conv)?;
    for i in 1..=2 {
        for j in 1..=2 {
            let (l, r) = alg.antipode_axiom(i, j)?;
            let eps = if i == j { Poly::one() } else { Poly::zero() };
            if l != eps || r != eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
