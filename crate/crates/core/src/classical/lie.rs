use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ncalg::{Family, GenSym};

/// Sparse vector in a Lie algebra, keyed by basis index.
pub type LieVec = BTreeMap<usize, BigRational>;

pub(crate) fn rat(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// The dual Lie bialgebra h of sl(n+1) (or its central extension h' by c),
/// with structure constants read off the matrix model.
#[derive(Clone, Debug)]
pub struct LieStructure {
    n: usize,
    central: bool,
    basis: Vec<GenSym>,
    index: HashMap<GenSym, usize>,
    // table[a][b] = [basis a, basis b]
    table: Vec<Vec<LieVec>>,
}

fn sign(a: usize, b: usize) -> i64 {
    let d = a.abs_diff(b);
    if (d - 1) % 2 == 0 {
        1
    } else {
        -1
    }
}

impl LieStructure {
    pub fn build_h(n: usize) -> Result<Self> {
        Self::build(n, false)
    }

    pub fn build_h_prime(n: usize) -> Result<Self> {
        Self::build(n, true)
    }

    fn build(n: usize, central: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadIndexLists("n must be at least 1".into()));
        }
        let m = n + 1;
        let mut basis = Vec::new();
        for j in 1..=m {
            for i in 1..j {
                basis.push(GenSym::new(Family::Lf, j, i));
            }
        }
        for i in 1..=n {
            basis.push(GenSym::single(Family::Lh, i));
        }
        if central {
            basis.push(GenSym::new(Family::C, 0, 0));
        }
        for i in 1..=m {
            for j in i + 1..=m {
                basis.push(GenSym::new(Family::Le, i, j));
            }
        }
        let index: HashMap<GenSym, usize> = basis.iter().enumerate().map(|(k, g)| (*g, k)).collect();
        let d = basis.len();
        let mut table = vec![vec![LieVec::new(); d]; d];

        // e_ab <-> sign(a,b) M_ab, f_ab <-> sign(a,b) M_ab; inside n+ and n-
        // the bracket is the matrix commutator
        let matrix_bracket = |x: &GenSym, y: &GenSym| -> LieVec {
            let mut out = LieVec::new();
            let (a, b, c, dd) = (x.i(), x.j(), y.i(), y.j());
            let s = sign(a, b) * sign(c, dd);
            let mut push = |r: usize, col: usize, coeff: i64| {
                let g = GenSym::new(x.family, r, col);
                if let Some(&k) = index.get(&g) {
                    let v = rat(coeff * s * sign(r, col));
                    let e = out.entry(k).or_insert_with(BigRational::zero);
                    *e += v;
                    if e.is_zero() {
                        out.remove(&k);
                    }
                }
            };
            if b == c {
                push(a, dd, 1);
            }
            if dd == a {
                push(c, b, -1);
            }
            out
        };
        for (ka, ga) in basis.iter().enumerate() {
            for (kb, gb) in basis.iter().enumerate() {
                let v = match (ga.family, gb.family) {
                    (Family::Le, Family::Le) | (Family::Lf, Family::Lf) => matrix_bracket(ga, gb),
                    (Family::Lh, Family::Le) | (Family::Lh, Family::Lf) => {
                        let i = ga.i();
                        let (a, b) = (gb.i(), gb.j());
                        let w = |t: usize| -> i64 { (t == i) as i64 - (t == i + 1) as i64 };
                        let mut c = w(a) - w(b);
                        if gb.family == Family::Lf {
                            c = -c;
                        }
                        let mut out = LieVec::new();
                        if c != 0 {
                            out.insert(kb, rat(c));
                        }
                        out
                    }
                    _ => continue,
                };
                table[ka][kb] = v.clone();
                let neg: LieVec = v.into_iter().map(|(k, c)| (k, -c)).collect();
                table[kb][ka] = neg;
            }
        }
        let lie = Self {
            n,
            central,
            basis,
            index,
            table,
        };
        lie.check_antisymmetry()?;
        lie.check_jacobi()?;
        Ok(lie)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_central(&self) -> bool {
        self.central
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GenSym] {
        &self.basis
    }

    pub fn index_of(&self, g: GenSym) -> Result<usize> {
        self.index.get(&g).copied().ok_or_else(|| Error::UnknownGenerator(g.to_string()))
    }

    /// f_{j,i}, j > i.
    pub fn f(&self, j: usize, i: usize) -> usize {
        self.index[&GenSym::new(Family::Lf, j, i)]
    }

    pub fn h(&self, i: usize) -> usize {
        self.index[&GenSym::single(Family::Lh, i)]
    }

    /// e_{i,j}, i < j.
    pub fn e(&self, i: usize, j: usize) -> usize {
        self.index[&GenSym::new(Family::Le, i, j)]
    }

    pub fn c(&self) -> Option<usize> {
        self.index.get(&GenSym::new(Family::C, 0, 0)).copied()
    }

    pub fn bracket(&self, a: usize, b: usize) -> &LieVec {
        &self.table[a][b]
    }

    pub fn bracket_vec(&self, x: &LieVec, y: &LieVec) -> LieVec {
        let mut out = LieVec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (k, c) in &self.table[*a][*b] {
                    let e = out.entry(*k).or_insert_with(BigRational::zero);
                    *e += c * ca * cb;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn unit(&self, k: usize) -> LieVec {
        LieVec::from([(k, BigRational::one())])
    }

    fn check_antisymmetry(&self) -> Result<()> {
        for a in 0..self.dim() {
            if !self.table[a][a].is_empty() {
                return Err(Error::JacobiFailure(format!("[{0},{0}] != 0", self.basis[a])));
            }
        }
        Ok(())
    }

    pub fn check_jacobi(&self) -> Result<()> {
        let d = self.dim();
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    let (x, y, z) = (self.unit(a), self.unit(b), self.unit(c));
                    let mut s = self.bracket_vec(&self.bracket_vec(&x, &y), &z);
                    for (k, v) in self.bracket_vec(&self.bracket_vec(&y, &z), &x) {
                        *s.entry(k).or_insert_with(BigRational::zero) += v;
                    }
                    for (k, v) in self.bracket_vec(&self.bracket_vec(&z, &x), &y) {
                        *s.entry(k).or_insert_with(BigRational::zero) += v;
                    }
                    if s.values().any(|v| !v.is_zero()) {
                        return Err(Error::JacobiFailure(format!(
                            "{}, {}, {}",
                            self.basis[a], self.basis[b], self.basis[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
