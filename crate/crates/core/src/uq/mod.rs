//! U_q(gl(n+1)) over Q(q): triangular normal form F·G·E, with the q-Serre
//! relations handled blockwise by graded linear algebra.

mod roots;
mod theta;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::coeffring::{LaurentPoly, RatFunc};
use crate::error::{Error, Result};
use crate::ncalg::{
    algebra_map, anti_algebra_map, character, graded_component_basis, tensor_algebra_map, AlgebraSpec, Family, GenSym,
    GradedPiece, Letter, PostReducer, Poly, SpecBuilder, Tensor, Word,
};

pub use roots::{braid_image, braid_on_words, braid_t, convex_order, q_bracket, root_vector_iterated, root_vector_lusztig, ConvexOrder, Side, SlLetter};
pub use theta::{collapse_at_one, mu_p, theta_map, CollapsedTensor, ThetaMaps};

/// Default cap on the number of words in one graded Serre block.
pub const DEFAULT_BLOCK_CAP: usize = 60_000;

type P = Poly<RatFunc>;

/// Letter layout: F_1..F_n, then (Ginv_1, G_1, ..., Ginv_{n+1}, G_{n+1}),
/// then E_1..E_n.
#[derive(Clone, Copy, Debug)]
struct Layout {
    n: usize,
}

impl Layout {
    fn f(self, i: usize) -> Letter {
        (i - 1) as Letter
    }

    fn ginv(self, i: usize) -> Letter {
        (self.n + 2 * (i - 1)) as Letter
    }

    fn g(self, i: usize) -> Letter {
        (self.n + 2 * (i - 1) + 1) as Letter
    }

    fn e(self, i: usize) -> Letter {
        (self.n + 2 * (self.n + 1) + i - 1) as Letter
    }

    fn size(self) -> usize {
        3 * self.n + 2
    }

    fn kind(self, l: Letter) -> Kind {
        let l = l as usize;
        let n = self.n;
        if l < n {
            Kind::F(l + 1)
        } else if l < n + 2 * (n + 1) {
            let k = l - n;
            if k % 2 == 0 {
                Kind::G(k / 2 + 1, -1)
            } else {
                Kind::G(k / 2 + 1, 1)
            }
        } else {
            Kind::E(l - n - 2 * (n + 1) + 1)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    F(usize),
    G(usize, i64),
    E(usize),
}

fn qp(k: i64) -> RatFunc {
    RatFunc::q_pow(k)
}

fn d(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// Projects the F-prefix and E-suffix of a rule-normal word onto the standard
/// words of their graded pieces modulo the Serre and far-commutation
/// relations.
struct SerreReducer {
    layout: Layout,
    f_letters: Vec<Letter>,
    e_letters: Vec<Letter>,
    f_rels: Vec<P>,
    e_rels: Vec<P>,
    cap: usize,
    cache: Mutex<HashMap<(bool, Vec<usize>), Arc<GradedPiece>>>,
}

impl SerreReducer {
    fn piece(&self, e_side: bool, multideg: Vec<usize>) -> Result<Arc<GradedPiece>> {
        let key = (e_side, multideg);
        if let Some(p) = self.cache.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let (letters, rels) = if e_side {
            (&self.e_letters, &self.e_rels)
        } else {
            (&self.f_letters, &self.f_rels)
        };
        let piece = Arc::new(graded_component_basis(letters, rels, &key.1, self.cap)?);
        self.cache.lock().unwrap().insert(key, piece.clone());
        Ok(piece)
    }

    fn split(&self, w: &Word) -> (usize, usize) {
        let a = w.0.iter().take_while(|l| matches!(self.layout.kind(**l), Kind::F(_))).count();
        let b = w.0.len() - w.0.iter().rev().take_while(|l| matches!(self.layout.kind(**l), Kind::E(_))).count();
        (a, b.max(a))
    }
}

fn multideg(letters: &[Letter], w: &[Letter]) -> Vec<usize> {
    let mut v = vec![0; letters.len()];
    for l in w {
        if let Some(k) = letters.iter().position(|x| x == l) {
            v[k] += 1;
        }
    }
    v
}

fn needs_block(w: &[Letter]) -> bool {
    // blocks of one letter kind, or of length < 3 with no adjacent pair, are
    // already standard
    w.len() >= 2
}

impl PostReducer<RatFunc> for SerreReducer {
    fn name(&self) -> &str {
        "q-Serre blocks"
    }

    fn reduce(&self, w: &Word) -> Result<Option<P>> {
        let (a, b) = self.split(w);
        let fpart = &w.0[..a];
        let mid = &w.0[a..b];
        let epart = &w.0[b..];
        let mut fimg = None;
        if needs_block(fpart) {
            let piece = self.piece(false, multideg(&self.f_letters, fpart))?;
            let fw = Word(fpart.to_vec());
            if !piece.is_standard(&fw) {
                fimg = Some(piece.project(&fw));
            }
        }
        let mut eimg = None;
        if needs_block(epart) {
            let piece = self.piece(true, multideg(&self.e_letters, epart))?;
            let ew = Word(epart.to_vec());
            if !piece.is_standard(&ew) {
                eimg = Some(piece.project(&ew));
            }
        }
        if fimg.is_none() && eimg.is_none() {
            return Ok(None);
        }
        let fimg = fimg.unwrap_or_else(|| Poly::word(Word(fpart.to_vec())));
        let eimg = eimg.unwrap_or_else(|| Poly::word(Word(epart.to_vec())));
        let m = Poly::word(Word(mid.to_vec()));
        Ok(Some(fimg.concat_mul(&m).concat_mul(&eimg)))
    }
}

pub struct UqAlgebra {
    n: usize,
    layout: Layout,
    spec: Arc<AlgebraSpec<RatFunc>>,
}

impl UqAlgebra {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_block_cap(n, DEFAULT_BLOCK_CAP)
    }

    pub fn with_block_cap(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadIndexLists("n must be at least 1".into()));
        }
        let lay = Layout { n };
        let mut alphabet = Vec::with_capacity(lay.size());
        for i in 1..=n {
            alphabet.push(GenSym::single(Family::F, i));
        }
        for i in 1..=n + 1 {
            alphabet.push(GenSym::single(Family::Ginv, i));
            alphabet.push(GenSym::single(Family::G, i));
        }
        for i in 1..=n {
            alphabet.push(GenSym::single(Family::E, i));
        }
        let mut b = SpecBuilder::<RatFunc>::new(format!("Uq(gl({}))", n + 1), alphabet);
        let w = |v: &[Letter]| Word(v.to_vec());
        let gl: Vec<(usize, i64, Letter)> = (1..=n + 1)
            .flat_map(|i| [(i, -1, lay.ginv(i)), (i, 1, lay.g(i))])
            .collect();

        // torus: sorted, with G G^-1 = 1 = G^-1 G
        for &(i, si, li) in &gl {
            for &(j, sj, lj) in &gl {
                if i == j && si != sj {
                    b.rule(li, lj, Poly::one());
                } else if li > lj {
                    b.rule(li, lj, Poly::word(w(&[lj, li])));
                }
            }
        }
        for &(i, s, lg) in &gl {
            for j in 1..=n {
                // G_i F_j G_i^-1 = q^{δ(i,j+1) - δ(i,j)} F_j
                let a = d(i, j + 1) - d(i, j);
                b.rule(lg, lay.f(j), Poly::monomial(w(&[lay.f(j), lg]), qp(s * a)));
                // G_i E_j G_i^-1 = q^{δ(i,j) - δ(i,j+1)} E_j, so E_j G_i = q^{-b} G_i E_j
                let bb = d(i, j) - d(i, j + 1);
                b.rule(lay.e(j), lg, Poly::monomial(w(&[lg, lay.e(j)]), qp(-s * bb)));
            }
        }
        let inv_qq = RatFunc::from_laurent(LaurentPoly::q_minus_qinv()).inverse()?;
        for i in 1..=n {
            for j in 1..=n {
                let mut rhs = Poly::word(w(&[lay.f(j), lay.e(i)]));
                if i == j {
                    rhs.add_term(w(&[lay.g(i), lay.ginv(i + 1)]), &inv_qq);
                    rhs.add_term(w(&[lay.ginv(i), lay.g(i + 1)]), &inv_qq.neg_ref());
                }
                b.rule(lay.e(i), lay.f(j), rhs);
                if i > j + 1 {
                    b.rule(lay.f(i), lay.f(j), Poly::word(w(&[lay.f(j), lay.f(i)])));
                    b.rule(lay.e(i), lay.e(j), Poly::word(w(&[lay.e(j), lay.e(i)])));
                }
            }
        }

        let f_letters: Vec<Letter> = (1..=n).map(|i| lay.f(i)).collect();
        let e_letters: Vec<Letter> = (1..=n).map(|i| lay.e(i)).collect();
        let f_rels = block_relations(&f_letters);
        let e_rels = block_relations(&e_letters);
        b.post_reducer(Arc::new(SerreReducer {
            layout: lay,
            f_letters,
            e_letters,
            f_rels,
            e_rels,
            cap,
            cache: Mutex::new(HashMap::new()),
        }));
        Ok(Self {
            n,
            layout: lay,
            spec: Arc::new(b.build()?),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec<RatFunc>> {
        &self.spec
    }

    pub fn f_letter(&self, i: usize) -> Letter {
        self.layout.f(i)
    }

    pub fn e_letter(&self, i: usize) -> Letter {
        self.layout.e(i)
    }

    pub fn g_letter(&self, i: usize, sign: i64) -> Letter {
        if sign > 0 {
            self.layout.g(i)
        } else {
            self.layout.ginv(i)
        }
    }

    pub fn is_f(&self, l: Letter) -> bool {
        matches!(self.layout.kind(l), Kind::F(_))
    }

    pub fn is_e(&self, l: Letter) -> bool {
        matches!(self.layout.kind(l), Kind::E(_))
    }

    /// (index, ±1) for a torus letter.
    pub fn torus(&self, l: Letter) -> Option<(usize, i64)> {
        match self.layout.kind(l) {
            Kind::G(i, s) => Some((i, s)),
            _ => None,
        }
    }

    pub fn index_of(&self, l: Letter) -> usize {
        match self.layout.kind(l) {
            Kind::F(i) | Kind::E(i) | Kind::G(i, _) => i,
        }
    }

    pub fn f(&self, i: usize) -> P {
        Poly::word(Word::letter(self.layout.f(i)))
    }

    pub fn e(&self, i: usize) -> P {
        Poly::word(Word::letter(self.layout.e(i)))
    }

    pub fn g(&self, i: usize) -> P {
        Poly::word(Word::letter(self.layout.g(i)))
    }

    pub fn g_inv(&self, i: usize) -> P {
        Poly::word(Word::letter(self.layout.ginv(i)))
    }

    /// Π G_i^{a_i} as a normal-form monomial.
    pub fn g_monomial(&self, exps: &[i64]) -> P {
        let mut v = Vec::new();
        for (k, &a) in exps.iter().enumerate() {
            let l = if a > 0 { self.layout.g(k + 1) } else { self.layout.ginv(k + 1) };
            for _ in 0..a.unsigned_abs() {
                v.push(l);
            }
        }
        Poly::word(Word(v))
    }

    /// K_i = G_i G_{i+1}^-1, and K_i^-1.
    pub fn k(&self, i: usize, sign: i64) -> P {
        let mut e = vec![0; self.n + 1];
        e[i - 1] = sign;
        e[i] = -sign;
        self.g_monomial(&e)
    }

    /// L_i = G_1 ... G_i (sign -1 for the inverse).
    pub fn l(&self, i: usize, sign: i64) -> P {
        let mut e = vec![0; self.n + 1];
        for x in e.iter_mut().take(i) {
            *x = sign;
        }
        self.g_monomial(&e)
    }

    pub fn triangular_nf(&self, a: &P) -> Result<P> {
        self.spec.nf(a)
    }

    pub fn mul(&self, a: &P, b: &P) -> Result<P> {
        self.spec.mul(a, b)
    }

    pub fn mul_all(&self, xs: &[P]) -> Result<P> {
        self.spec.mul_all(xs)
    }

    /// Torus exponent vector of a normal-form word (length n+1).
    pub fn torus_exponents(&self, w: &Word) -> Vec<i64> {
        let mut e = vec![0; self.n + 1];
        for l in &w.0 {
            if let Some((i, s)) = self.torus(*l) {
                e[i - 1] += s;
            }
        }
        e
    }

    /// Splits a normal-form word into (F-word, torus exponents, E-word).
    pub fn split_word(&self, w: &Word) -> (Word, Vec<i64>, Word) {
        let f = w.0.iter().copied().filter(|l| self.is_f(*l)).collect();
        let e = w.0.iter().copied().filter(|l| self.is_e(*l)).collect();
        (Word(f), self.torus_exponents(w), Word(e))
    }

    fn gen_coproduct(&self, l: Letter) -> Tensor<RatFunc> {
        let lay = self.layout;
        let one = RatFunc::one();
        let mut t = Tensor::zero(2);
        match lay.kind(l) {
            Kind::F(i) => {
                t.add_term(vec![Word::letter(l), Word(vec![lay.ginv(i), lay.g(i + 1)])], &one);
                t.add_term(vec![Word::empty(), Word::letter(l)], &one);
            }
            Kind::E(i) => {
                t.add_term(vec![Word::letter(l), Word::empty()], &one);
                t.add_term(vec![Word(vec![lay.g(i), lay.ginv(i + 1)]), Word::letter(l)], &one);
            }
            Kind::G(..) => t.add_term(vec![Word::letter(l), Word::letter(l)], &one),
        }
        t
    }

    pub fn coproduct(&self, a: &P) -> Result<Tensor<RatFunc>> {
        let s = self.spec.as_ref();
        tensor_algebra_map(a, &[s, s], &mut |l| Ok(self.gen_coproduct(l)))
    }

    pub fn counit(&self, a: &P) -> RatFunc {
        character(a, &|l| match self.layout.kind(l) {
            Kind::G(..) => RatFunc::one(),
            _ => RatFunc::zero(),
        })
    }

    pub fn antipode(&self, a: &P) -> Result<P> {
        let lay = self.layout;
        anti_algebra_map(a, &self.spec, &mut |l| {
            Ok(match lay.kind(l) {
                Kind::F(i) => Poly::monomial(Word(vec![l, lay.g(i), lay.ginv(i + 1)]), RatFunc::from_int(-1)),
                Kind::E(i) => Poly::monomial(Word(vec![lay.ginv(i), lay.g(i + 1), l]), RatFunc::from_int(-1)),
                Kind::G(i, s) => Poly::word(Word::letter(if s > 0 { lay.ginv(i) } else { lay.g(i) })),
            })
        })
        .and_then(|p| self.triangular_nf(&p))
    }

    /// The quotient by L_{n+1} - 1: G_{n+1}^{±1} ↦ L_n^{∓1}.
    pub fn project_p(&self, a: &P) -> Result<P> {
        let n = self.n;
        let lay = self.layout;
        algebra_map(a, &self.spec, &mut |l| {
            Ok(match lay.kind(l) {
                Kind::G(i, s) if i == n + 1 => self.l(n, -s),
                _ => Poly::word(Word::letter(l)),
            })
        })
    }

    pub fn project_p_tensor(&self, t: &Tensor<RatFunc>) -> Result<Tensor<RatFunc>> {
        let once = t.map_factor(0, |w| self.project_p(&Poly::word(w.clone())))?;
        once.map_factor(1, |w| self.project_p(&Poly::word(w.clone())))
    }

    /// Graded piece of U_q(n+) (E side) or U_q(n-) (F side) for a multidegree.
    pub fn block_piece(&self, e_side: bool, multideg: &[usize], cap: usize) -> Result<GradedPiece> {
        let letters: Vec<Letter> = (1..=self.n)
            .map(|i| if e_side { self.layout.e(i) } else { self.layout.f(i) })
            .collect();
        graded_component_basis(&letters, &block_relations(&letters), multideg, cap)
    }
}

/// q-Serre relations for adjacent letters and commutators for distant ones.
fn block_relations(letters: &[Letter]) -> Vec<P> {
    let mut out = Vec::new();
    let n = letters.len();
    let qq = RatFunc::from_laurent(LaurentPoly::from_pairs([(1, 1), (-1, 1)]));
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (letters[i], letters[j]);
            if i.abs_diff(j) == 1 {
                let mut r = Poly::word(Word(vec![a, a, b]));
                r.add_term(Word(vec![a, b, a]), &qq.neg_ref());
                r.add_term(Word(vec![b, a, a]), &RatFunc::one());
                out.push(r);
            } else if i > j + 1 {
                let mut r = Poly::word(Word(vec![a, b]));
                r.add_term(Word(vec![b, a]), &RatFunc::from_int(-1));
                out.push(r);
            }
        }
    }
    out
}

/// Coefficient conversion from Z[q,q^-1] into Q(q).
pub fn to_ratfunc_poly(p: &Poly<LaurentPoly>) -> P {
    p.map_coeffs(|c| RatFunc::from_laurent(c.clone()))
}
