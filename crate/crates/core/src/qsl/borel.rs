//! The Borel quotients ρ± of F_q[SL(n+1)]: upper (resp. lower) triangular
//! entries with the diagonal product set to 1.

use std::sync::Arc;

use crate::coeffring::Coeff;
use crate::error::{Error, Result};
use crate::ncalg::{AlgebraSpec, GenSym, Letter, PostReducer, Poly, Tensor, Word};
use crate::qmatrix::{coproduct_on, counit_on, matrix_builder, transport};

use super::SLAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BorelSign {
    /// Keeps x_ij with i <= j.
    Plus,
    /// Keeps x_ij with i >= j.
    Minus,
}

impl BorelSign {
    pub fn keeps(self, i: usize, j: usize) -> bool {
        match self {
            Self::Plus => i <= j,
            Self::Minus => i >= j,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Plus => "B+",
            Self::Minus => "B-",
        }
    }
}

/// Diagonal entries commute in both quotients, so their product can be
/// dropped from any word containing all of them.
struct DiagonalReducer {
    diag: Vec<Letter>,
}

impl<C: Coeff> PostReducer<C> for DiagonalReducer {
    fn name(&self) -> &str {
        "diagonal product = 1"
    }

    fn reduce(&self, w: &Word) -> Result<Option<Poly<C>>> {
        let mut rest = w.0.clone();
        for d in &self.diag {
            match rest.iter().position(|l| l == d) {
                Some(p) => {
                    rest.remove(p);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(Poly::word(Word(rest))))
    }

    fn metric(&self, w: &Word) -> Option<Vec<i64>> {
        Some(vec![w.len() as i64])
    }
}

pub struct BorelAlgebra<C: Coeff> {
    n: usize,
    sign: BorelSign,
    positions: Vec<(usize, usize)>,
    spec: Arc<AlgebraSpec<C>>,
}

impl<C: Coeff> BorelAlgebra<C> {
    pub fn new(n: usize, sign: BorelSign) -> Result<Self> {
        let m = n + 1;
        let diag: Vec<(usize, usize)> = (1..=m).map(|i| (i, i)).collect();
        let mut off = Vec::new();
        for i in 1..=m {
            for j in 1..=m {
                if i != j && sign.keeps(i, j) {
                    off.push((i, j));
                }
            }
        }
        let positions: Vec<(usize, usize)> = match sign {
            BorelSign::Plus => diag.iter().chain(&off).copied().collect(),
            BorelSign::Minus => off.iter().chain(&diag).copied().collect(),
        };
        let mut b = matrix_builder::<C>(&format!("{}({m})", sign.name()), &positions);
        let diag_letters = diag.iter().map(|&(i, j)| b.letter(GenSym::x(i, j))).collect();
        b.post_reducer(Arc::new(DiagonalReducer { diag: diag_letters }));
        Ok(Self {
            n,
            sign,
            positions,
            spec: Arc::new(b.build()?),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> BorelSign {
        self.sign
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec<C>> {
        &self.spec
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn x(&self, i: usize, j: usize) -> Result<Poly<C>> {
        if !self.sign.keeps(i, j) {
            return Err(Error::NotInBorel(format!("x[{i},{j}] is killed in {}", self.sign.name())));
        }
        self.spec.gen(GenSym::x(i, j))
    }

    pub fn nf(&self, a: &Poly<C>) -> Result<Poly<C>> {
        self.spec.nf(a)
    }

    pub fn mul(&self, a: &Poly<C>, b: &Poly<C>) -> Result<Poly<C>> {
        self.spec.mul(a, b)
    }

    /// ρ±: the quotient map from any algebra on x[i,j] generators.
    pub fn borel_quotient(&self, a: &Poly<C>, from: &AlgebraSpec<C>) -> Result<Poly<C>> {
        transport(a, from, &self.spec, true)
    }

    /// Δ(x_ij) = Σ x_ik ⊗ x_kj over surviving k.
    pub fn coproduct(&self, a: &Poly<C>) -> Result<Tensor<C>> {
        coproduct_on(a, &self.spec, &self.positions, self.n + 1)
    }

    pub fn counit(&self, a: &Poly<C>) -> C {
        counit_on(a, &self.positions)
    }

    /// S via S∘ρ = ρ∘S_SL (every Borel word is also an SL word).
    pub fn antipode(&self, a: &Poly<C>, sl: &SLAlgebra<C>) -> Result<Poly<C>> {
        let lifted = transport(a, &self.spec, sl.spec(), false)?;
        self.borel_quotient(&sl.antipode(&lifted)?, sl.spec())
    }
}
