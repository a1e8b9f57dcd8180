//! The displayed cobracket of h (and h'), as antisymmetric tensors of
//! degree (1, 1), plus the 1-cocycle test that cross-checks it against the
//! structure constants.

use num_rational::BigRational;
use num_traits::One;

use super::lie::{rat, LieStructure, LieVec};
use super::pbw::{PBWElement, PBWTensor};
use crate::error::{Error, Result};

/// Chevalley generators of h and the central c of h'.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalGen {
    F(usize),
    H(usize),
    E(usize),
    C,
}

impl ClassicalGen {
    pub fn index(self, lie: &LieStructure) -> Result<usize> {
        let n = lie.n();
        let bad = || Error::UnknownGenerator(format!("{self:?} for n = {n}"));
        match self {
            Self::F(i) if (1..=n).contains(&i) => Ok(lie.f(i + 1, i)),
            Self::H(i) if (1..=n).contains(&i) => Ok(lie.h(i)),
            Self::E(i) if (1..=n).contains(&i) => Ok(lie.e(i, i + 1)),
            Self::C => lie.c().ok_or_else(bad),
            _ => Err(bad()),
        }
    }

    /// All generators of h (and c when present).
    pub fn all(lie: &LieStructure) -> Vec<Self> {
        let n = lie.n();
        let mut v: Vec<Self> = (1..=n).map(Self::F).collect();
        v.extend((1..=n).map(Self::H));
        v.extend((1..=n).map(Self::E));
        if lie.has_central() {
            v.push(Self::C);
        }
        v
    }
}

/// Root-vector rescaling: e_{ij} -> s(i,j) e_{ij}, f_{ji} -> s(i,j)^-1 f_{ji}
/// for non-simple roots.
pub type RootScaling<'a> = &'a dyn Fn(usize, usize) -> BigRational;

fn e_vec(lie: &LieStructure, i: usize, j: usize, s: Option<RootScaling>) -> PBWElement {
    let c = match s {
        Some(f) if j > i + 1 => f(i, j),
        _ => BigRational::one(),
    };
    PBWElement::monomial(vec![lie.e(i, j)], c)
}

fn f_vec(lie: &LieStructure, j: usize, i: usize, s: Option<RootScaling>) -> PBWElement {
    let c = match s {
        Some(f) if j > i + 1 => BigRational::one() / f(i, j),
        _ => BigRational::one(),
    };
    PBWElement::monomial(vec![lie.f(j, i)], c)
}

pub fn reference_cobracket(lie: &LieStructure, g: ClassicalGen) -> Result<PBWTensor> {
    reference_cobracket_scaled(lie, g, None)
}

/// The displayed formulas, transcribed term by term with their printed
/// summation ranges.
pub fn reference_cobracket_scaled(lie: &LieStructure, g: ClassicalGen, s: Option<RootScaling>) -> Result<PBWTensor> {
    g.index(lie)?;
    let m = lie.n() + 1;
    let two = rat(2);
    let four = rat(4);
    let w = PBWTensor::wedge;
    let mut out = PBWTensor::zero();
    match g {
        ClassicalGen::F(i) => {
            out.add_scaled(&w(&PBWElement::monomial(vec![lie.h(i)], BigRational::one()), &f_vec(lie, i + 1, i, None)), &BigRational::one());
            for j in 1..i {
                out.add_scaled(&w(&f_vec(lie, i + 1, j, s), &e_vec(lie, j, i, s)), &two);
            }
            for j in i + 2..=m {
                out.add_scaled(&w(&e_vec(lie, i + 1, j, s), &f_vec(lie, j, i, s)), &two);
            }
        }
        ClassicalGen::H(i) => {
            let mut sum = PBWTensor::zero();
            for j in 1..i {
                sum.add_scaled(&w(&f_vec(lie, i, j, s), &e_vec(lie, j, i, s)), &BigRational::one());
            }
            for j in i + 1..=m {
                sum.add_scaled(&w(&e_vec(lie, i, j, s), &f_vec(lie, j, i, s)), &BigRational::one());
            }
            for j in 1..=i {
                sum.add_scaled(&w(&f_vec(lie, i + 1, j, s), &e_vec(lie, j, i + 1, s)), &-BigRational::one());
            }
            for j in i + 2..=m {
                sum.add_scaled(&w(&e_vec(lie, i + 1, j, s), &f_vec(lie, j, i + 1, s)), &-BigRational::one());
            }
            out.add_scaled(&sum, &four);
        }
        ClassicalGen::E(i) => {
            out.add_scaled(&w(&e_vec(lie, i, i + 1, None), &PBWElement::monomial(vec![lie.h(i)], BigRational::one())), &BigRational::one());
            for j in 1..i {
                out.add_scaled(&w(&e_vec(lie, j, i + 1, s), &f_vec(lie, i, j, s)), &two);
            }
            for j in i + 2..=m {
                out.add_scaled(&w(&f_vec(lie, j, i + 1, s), &e_vec(lie, i, j, s)), &two);
            }
        }
        ClassicalGen::C => {
            let n = lie.n();
            for k in 1..=n {
                out.add_scaled(&w(&f_vec(lie, n + 1, k, s), &e_vec(lie, k, n + 1, s)), &four);
            }
        }
    }
    Ok(out)
}

/// x · t for t in h ⊗ h (single-letter factors): [x,a]⊗b + a⊗[x,b].
pub fn ad_on_tensor(lie: &LieStructure, x: usize, t: &PBWTensor) -> PBWTensor {
    let mut out = PBWTensor::zero();
    for ((a, b), c) in &t.terms {
        debug_assert!(a.len() == 1 && b.len() == 1);
        for (k, d) in lie.bracket(x, a[0]) {
            out.add_term(vec![*k], b.clone(), &(c * d));
        }
        for (k, d) in lie.bracket(x, b[0]) {
            out.add_term(a.clone(), vec![*k], &(c * d));
        }
    }
    out
}

/// Outcome of δ([x,y]) = x·δ(y) - y·δ(x) for one generator pair.
#[derive(Clone, Debug)]
pub struct CocycleCheck {
    pub x: ClassicalGen,
    pub y: ClassicalGen,
    /// x·δ(y) - y·δ(x) - δ([x,y]); zero when the identity holds.
    pub defect: PBWTensor,
}

impl CocycleCheck {
    pub fn holds(&self) -> bool {
        self.defect.is_zero()
    }
}

/// δ on a Lie vector, when every basis element in it is a generator.
fn delta_vec(lie: &LieStructure, v: &LieVec) -> Result<Option<PBWTensor>> {
    let gens = ClassicalGen::all(lie);
    let mut out = PBWTensor::zero();
    for (k, c) in v {
        let Some(g) = gens.iter().find(|g| g.index(lie).ok() == Some(*k)) else {
            return Ok(None);
        };
        out.add_scaled(&reference_cobracket(lie, *g)?, c);
    }
    Ok(Some(out))
}

/// Runs the cocycle identity over all generator pairs whose bracket is again
/// a combination of generators (other pairs need δ on non-simple root
/// vectors, which the displayed formulas do not give).
pub fn cocycle_checks(lie: &LieStructure) -> Result<Vec<CocycleCheck>> {
    let gens = ClassicalGen::all(lie);
    let mut out = Vec::new();
    for (a, &x) in gens.iter().enumerate() {
        for &y in &gens[a..] {
            let (kx, ky) = (x.index(lie)?, y.index(lie)?);
            let Some(lhs) = delta_vec(lie, lie.bracket(kx, ky))? else { continue };
            let rhs = ad_on_tensor(lie, kx, &reference_cobracket(lie, y)?)
                .minus(&ad_on_tensor(lie, ky, &reference_cobracket(lie, x)?));
            let defect = rhs.minus(&lhs);
            out.push(CocycleCheck { x, y, defect });
        }
    }
    Ok(out)
}

