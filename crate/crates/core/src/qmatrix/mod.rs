//! The quantum matrix bialgebra F_q[M(n+1)] on generators x[i,j].

use std::sync::Arc;

use itertools::Itertools;

use crate::coeffring::{Coeff, LaurentPoly};
use crate::error::{Error, Result};
use crate::ncalg::{
    algebra_map, character, tensor_algebra_map, AlgebraSpec, GenSym, Letter, Poly, SpecBuilder, Tensor, Word,
};

/// Generator orders for the matrix entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixOrder {
    /// Row-major.
    Lex,
    /// Entries above the antidiagonal i+j = n+2, then on it, then below.
    Antidiag,
    /// Strictly lower, then diagonal, then strictly upper.
    Triangular,
    /// Explicit list of (i, j), earliest first.
    Custom(Vec<(usize, usize)>),
}

impl MatrixOrder {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lex" => Some(Self::Lex),
            "antidiag" => Some(Self::Antidiag),
            "triangular" => Some(Self::Triangular),
            _ => None,
        }
    }

    pub fn positions(&self, n: usize) -> Vec<(usize, usize)> {
        let m = n + 1;
        let all: Vec<(usize, usize)> = (1..=m).cartesian_product(1..=m).collect();
        match self {
            Self::Lex => all,
            Self::Antidiag => {
                let a = n + 2;
                let mut v: Vec<_> = all.iter().copied().filter(|(i, j)| i + j < a).collect();
                v.extend(all.iter().copied().filter(|(i, j)| i + j == a));
                v.extend(all.iter().copied().filter(|(i, j)| i + j > a));
                v
            }
            Self::Triangular => {
                let mut v: Vec<_> = all.iter().copied().filter(|(i, j)| i > j).collect();
                v.extend(all.iter().copied().filter(|(i, j)| i == j));
                v.extend(all.iter().copied().filter(|(i, j)| i < j));
                v
            }
            Self::Custom(v) => v.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Lex => "lex",
            Self::Antidiag => "antidiag",
            Self::Triangular => "triangular",
            Self::Custom(_) => "custom",
        }
    }
}

/// a·b = alpha·b·a + beta·(corr word), for matrix entries a, b.
pub(crate) struct Commutation {
    pub alpha: LaurentPoly,
    pub beta: Option<(LaurentPoly, (usize, usize), (usize, usize))>,
}

/// The defining relations read as a swap rule for a·b.
pub(crate) fn commutation(a: (usize, usize), b: (usize, usize)) -> Commutation {
    let q = LaurentPoly::q();
    let qi = LaurentPoly::q_pow(-1);
    let plain = |alpha| Commutation { alpha, beta: None };
    let (i, k) = a;
    let (j, l) = b;
    if i == j {
        return plain(if k < l { q } else { qi });
    }
    if k == l {
        return plain(if i < j { q } else { qi });
    }
    let c = LaurentPoly::q_minus_qinv();
    if i < j {
        if k > l {
            plain(LaurentPoly::one())
        } else {
            // x_ik x_jl - x_jl x_ik = (q - q^-1) x_il x_jk
            Commutation {
                alpha: LaurentPoly::one(),
                beta: Some((c, (i, l), (j, k))),
            }
        }
    } else if l > k {
        plain(LaurentPoly::one())
    } else {
        // b = x_jl with j < i, l < k: b a - a b = (q - q^-1) x_jk x_il
        Commutation {
            alpha: LaurentPoly::one(),
            beta: Some((c.neg_ref(), (j, k), (i, l))),
        }
    }
}

pub struct MatrixAlgebra<C: Coeff> {
    n: usize,
    order: MatrixOrder,
    positions: Vec<(usize, usize)>,
    spec: Arc<AlgebraSpec<C>>,
}

/// Builds the rule table of F_q[M(n+1)] over the given entry order; shared
/// with the SL, GL and Borel constructions.
pub fn matrix_builder<C: Coeff>(name: &str, positions: &[(usize, usize)]) -> SpecBuilder<C> {
    let alphabet: Vec<GenSym> = positions.iter().map(|&(i, j)| GenSym::x(i, j)).collect();
    let mut b = SpecBuilder::new(name, alphabet);
    let rank = |p: (usize, usize)| positions.iter().position(|x| *x == p).map(|k| k as Letter);
    for (ra, &pa) in positions.iter().enumerate() {
        for (rb, &pb) in positions.iter().enumerate() {
            if ra <= rb {
                continue;
            }
            let rel = commutation(pa, pb);
            let mut rhs = Poly::monomial(Word(vec![rb as Letter, ra as Letter]), C::from_laurent(&rel.alpha));
            if let Some((beta, u, v)) = rel.beta {
                if let (Some(lu), Some(lv)) = (rank(u), rank(v)) {
                    let w = if lu <= lv { vec![lu, lv] } else { vec![lv, lu] };
                    rhs.add_term(Word(w), &C::from_laurent(&beta));
                }
            }
            b.rule(ra as Letter, rb as Letter, rhs);
        }
    }
    b
}

impl<C: Coeff> MatrixAlgebra<C> {
    pub fn new(n: usize, order: MatrixOrder) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadIndexLists("n must be at least 1".into()));
        }
        let positions = order.positions(n);
        let m = n + 1;
        let mut sorted = positions.clone();
        sorted.sort();
        if sorted != (1..=m).cartesian_product(1..=m).collect::<Vec<_>>() {
            return Err(Error::InadmissibleOrder("order must list every entry once".into()));
        }
        let spec = matrix_builder::<C>(&format!("M({m})/{}", order.name()), &positions).build()?;
        Ok(Self {
            n,
            order,
            positions,
            spec: Arc::new(spec),
        })
    }

    /// Wraps a hand-built spec (used for negative controls with altered rules).
    pub fn from_spec(n: usize, order: MatrixOrder, spec: AlgebraSpec<C>) -> Self {
        let positions = order.positions(n);
        Self {
            n,
            order,
            positions,
            spec: Arc::new(spec),
        }
    }

    /// Construction plus the overlap check; a failure means the order is not
    /// usable even though each rule individually terminates.
    pub fn new_checked(n: usize, order: MatrixOrder) -> Result<Self> {
        let alg = Self::new(n, order)?;
        let rep = alg.spec.confluence_check(3)?;
        if !rep.is_confluent() {
            return Err(Error::InadmissibleOrder(format!(
                "{} overlaps fail to resolve",
                rep.failures.len()
            )));
        }
        Ok(alg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn order(&self) -> &MatrixOrder {
        &self.order
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec<C>> {
        &self.spec
    }

    pub fn x(&self, i: usize, j: usize) -> Poly<C> {
        self.spec.gen(GenSym::x(i, j)).expect("entry in range")
    }

    pub fn letter(&self, i: usize, j: usize) -> Letter {
        self.spec.letter(GenSym::x(i, j)).expect("entry in range")
    }

    pub fn entry(&self, l: Letter) -> (usize, usize) {
        self.positions[l as usize]
    }

    pub fn nf(&self, p: &Poly<C>) -> Result<Poly<C>> {
        self.spec.nf(p)
    }

    pub fn mul(&self, a: &Poly<C>, b: &Poly<C>) -> Result<Poly<C>> {
        self.spec.mul(a, b)
    }

    /// Δ(x_ij) = Σ_k x_ik ⊗ x_kj, extended multiplicatively.
    pub fn coproduct(&self, a: &Poly<C>) -> Result<Tensor<C>> {
        coproduct_on(a, &self.spec, &self.positions, self.size())
    }

    /// ε(x_ij) = δ_ij.
    pub fn counit(&self, a: &Poly<C>) -> C {
        counit_on(a, &self.positions)
    }

    /// Σ_σ (-q)^{l(σ)} x[r_1, c_σ(1)] ... x[r_k, c_σ(k)], rows in increasing order.
    pub fn quantum_minor(&self, rows: &[usize], cols: &[usize]) -> Result<Poly<C>> {
        quantum_minor_in(&self.spec, self.size(), rows, cols)
    }

    pub fn det_q(&self) -> Result<Poly<C>> {
        let all: Vec<usize> = (1..=self.size()).collect();
        self.quantum_minor(&all, &all)
    }

    pub fn verify_detq_central_grouplike(&self) -> Result<DetReport> {
        let det = self.det_q()?;
        let mut central = Vec::new();
        for &(i, j) in &self.positions {
            let x = self.x(i, j);
            let comm = self.spec.commutator(&det, &x)?;
            central.push(((i, j), comm.is_zero()));
        }
        let grouplike = self.coproduct(&det)? == Tensor::outer(&det, &det);
        let counit_one = self.counit(&det).is_one();
        Ok(DetReport {
            central,
            grouplike,
            counit_one,
        })
    }

    /// Splits each normal-form term into its N+ · N0 · N- factors.
    pub fn triangular_factor(&self, a: &Poly<C>) -> Result<Vec<TriangularTerm<C>>> {
        if self.order != MatrixOrder::Antidiag {
            return Err(Error::OrderMismatch("triangular_factor needs the antidiag order".into()));
        }
        let nf = self.nf(a)?;
        let anti = self.n + 2;
        let mut out = Vec::new();
        for (w, c) in nf.iter() {
            let mut parts = [Vec::new(), Vec::new(), Vec::new()];
            for l in &w.0 {
                let (i, j) = self.entry(*l);
                let slot = match (i + j).cmp(&anti) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Greater => 2,
                };
                parts[slot].push(*l);
            }
            let [p, z, m] = parts;
            out.push(TriangularTerm {
                n_plus: Word(p),
                n_zero: Word(z),
                n_minus: Word(m),
                coeff: c.clone(),
            });
        }
        Ok(out)
    }

    /// Ordered monomials of total degree at most `degree`.
    pub fn pbw_basis(&self, degree: usize) -> Vec<Word> {
        ordered_monomials(self.positions.len(), degree)
    }
}

/// All nondecreasing words over `letters` letters of length <= degree.
pub fn ordered_monomials(letters: usize, degree: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for d in 1..=degree {
        for combo in (0..letters as Letter).combinations_with_replacement(d) {
            out.push(Word(combo));
        }
    }
    out
}

pub(crate) fn coproduct_on<C: Coeff>(
    a: &Poly<C>,
    spec: &AlgebraSpec<C>,
    positions: &[(usize, usize)],
    m: usize,
) -> Result<Tensor<C>> {
    let rank = |p: (usize, usize)| positions.iter().position(|x| *x == p).map(|k| k as Letter);
    tensor_algebra_map(a, &[spec, spec], &mut |l| {
        let (i, j) = positions[l as usize];
        let mut t = Tensor::zero(2);
        for k in 1..=m {
            if let (Some(a), Some(b)) = (rank((i, k)), rank((k, j))) {
                t.add_term(vec![Word::letter(a), Word::letter(b)], &C::one());
            }
        }
        Ok(t)
    })
}

pub(crate) fn counit_on<C: Coeff>(a: &Poly<C>, positions: &[(usize, usize)]) -> C {
    character(a, &|l| {
        let (i, j) = positions[l as usize];
        if i == j {
            C::one()
        } else {
            C::zero()
        }
    })
}

/// Inversion count of a permutation given as images.
pub fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                c += 1;
            }
        }
    }
    c
}

pub(crate) fn quantum_minor_in<C: Coeff>(
    spec: &AlgebraSpec<C>,
    m: usize,
    rows: &[usize],
    cols: &[usize],
) -> Result<Poly<C>> {
    let ok = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&i| (1..=m).contains(&i));
    if rows.len() != cols.len() || !ok(rows) || !ok(cols) {
        return Err(Error::BadIndexLists(format!("rows {rows:?}, cols {cols:?}")));
    }
    let k = rows.len();
    let mut out = Poly::zero();
    if k == 0 {
        return Ok(Poly::one());
    }
    let mq = LaurentPoly::from_pairs([(1, -1)]);
    for perm in (0..k).permutations(k) {
        let coeff = C::from_laurent(&mq.pow(inversions(&perm) as u32));
        let gens: Vec<GenSym> = (0..k).map(|t| GenSym::x(rows[t], cols[perm[t]])).collect();
        let w = spec.word_of(&gens)?;
        out.add_scaled(&spec.nf_word(&w)?, &coeff);
    }
    Ok(out)
}

/// Re-expresses an element of one matrix-type algebra in another with the
/// same generator symbols (e.g. after changing the order), dropping words
/// with symbols the target lacks when `drop_missing` is set.
pub fn transport<C: Coeff>(
    a: &Poly<C>,
    from: &AlgebraSpec<C>,
    to: &AlgebraSpec<C>,
    drop_missing: bool,
) -> Result<Poly<C>> {
    algebra_map(a, to, &mut |l| match to.gen(from.gensym(l)) {
        Ok(p) => Ok(p),
        Err(_) if drop_missing => Ok(Poly::zero()),
        Err(e) => Err(e),
    })
}

#[derive(Clone, Debug)]
pub struct DetReport {
    pub central: Vec<((usize, usize), bool)>,
    pub grouplike: bool,
    pub counit_one: bool,
}

impl DetReport {
    pub fn all_pass(&self) -> bool {
        self.grouplike && self.counit_one && self.central.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug)]
pub struct TriangularTerm<C> {
    pub n_plus: Word,
    pub n_zero: Word,
    pub n_minus: Word,
    pub coeff: C,
}
