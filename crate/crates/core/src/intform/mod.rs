//! The integer forms generated by r_ij and one of φ_i, ψ_i, χ_i inside
//! F_q[SL(n+1)] (or F_q[GL(n+1)]), their relation and Hopf catalogs, and the
//! specialization at q = 1.
//!
//! Elements are handled in two shapes: *formal* expressions, i.e. words in the
//! free algebra on r[i,j], phi[i], psi[i], chi[i] with Q(q) coefficients, and
//! their *lifts*, normal forms in the ambient quantum function algebra over
//! Q(q). A formal expression with Laurent coefficients is a certificate that its
//! lift lies in the integer form.

mod catalog;
mod cert;
mod special;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use crate::coeffring::{q_minus_1_pow, LaurentPoly, RatFunc};
use crate::error::{Error, Result};
use crate::ncalg::{algebra_map, anti_algebra_map, tensor_algebra_map, AlgebraSpec, Family, GenSym, Letter, Poly, SpecBuilder, Tensor, Word};
use crate::qmatrix::{inversions, MatrixAlgebra, MatrixOrder};
use crate::qsl::{antipode_convention, SLAlgebra, SlStrategy};

pub use catalog::{verify_hopf_catalog, verify_relation_catalog, Catalog, RelationRecord, RelationStatus};
pub use special::{
    check_span_identities, hopf_closure, poisson_cobracket, specialize_phi, ClosureRecord, SpanIdentity, Specializer, ToralChoice,
};

pub type P = Poly<RatFunc>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntFormGen {
    R(usize, usize),
    Phi(usize),
    Psi(usize),
    Chi(usize),
}

impl IntFormGen {
    pub fn gensym(self) -> GenSym {
        match self {
            Self::R(i, j) => GenSym::new(Family::R, i, j),
            Self::Phi(i) => GenSym::single(Family::Phi, i),
            Self::Psi(i) => GenSym::single(Family::Psi, i),
            Self::Chi(i) => GenSym::single(Family::Chi, i),
        }
    }

    pub fn from_gensym(g: GenSym) -> Option<Self> {
        Some(match g.family {
            Family::R => Self::R(g.i(), g.j()),
            Family::Phi => Self::Phi(g.i()),
            Family::Psi => Self::Psi(g.i()),
            Family::Chi => Self::Chi(g.i()),
            _ => return None,
        })
    }
}

/// Which family of toral generators the form uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    /// φ_i = (ρ_ii - ρ_{i+1,i+1}) / (q - 1)
    Q,
    /// ψ_i = (ρ_11 ... ρ_ii - 1) / (q - 1)
    P,
    /// χ_i = (ρ_ii - 1) / (q - 1)
    Plain,
}

impl Form {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "Q" | "q" | "phi" => Some(Self::Q),
            "P" | "p" | "psi" => Some(Self::P),
            "plain" | "chi" => Some(Self::Plain),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Q => "Q",
            Self::P => "P",
            Self::Plain => "plain",
        }
    }

    pub fn all() -> [Form; 3] {
        [Self::Q, Self::P, Self::Plain]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    SL,
    GL,
}

enum Ambient {
    Sl(SLAlgebra<RatFunc>),
    Gl(MatrixAlgebra<RatFunc>),
}

/// Outcome of a (q - 1)-divisibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Divisibility {
    /// The quotient: formal for the lattice test (its lift times (q - 1) is
    /// the input), ambient for the canonical-basis test.
    Divisible(P),
    /// A basis monomial whose coordinate is not (q - 1) times a Laurent
    /// polynomial.
    NotDivisible { witness: String, coeff: RatFunc },
}

pub(crate) fn qq() -> RatFunc {
    RatFunc::from_laurent(LaurentPoly::q_minus_qinv())
}

pub(crate) fn qm1() -> RatFunc {
    RatFunc::from_laurent(LaurentPoly::q_minus_1())
}

/// 1 + q^-1
pub(crate) fn qi1() -> RatFunc {
    RatFunc::from_laurent(LaurentPoly::from_pairs([(0, 1), (-1, 1)]))
}

/// (-q)^k
pub(crate) fn mq(k: i64) -> RatFunc {
    let s = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    RatFunc::from_int(s).mul_ref(&RatFunc::q_pow(k))
}

pub(crate) fn rpow(x: &RatFunc, k: i64) -> RatFunc {
    x.pow(k).expect("nonzero base")
}

/// Coefficient in Q[q, q^-1]: the reduced denominator is a constant.
pub(crate) fn is_laurent(c: &RatFunc) -> bool {
    c.den().len() == 1
}

pub struct IntForm {
    n: usize,
    group: Group,
    ambient: Ambient,
    formal: Arc<AlgebraSpec<RatFunc>>,
    lifts: Mutex<HashMap<Letter, P>>,
    rules: Mutex<Option<Arc<cert::PairRules>>>,
}

impl IntForm {
    pub fn new(n: usize, group: Group) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadIndexLists("n must be at least 1".into()));
        }
        let m = n + 1;
        let mut alphabet: Vec<GenSym> = (1..=m).cartesian_product(1..=m).map(|(i, j)| IntFormGen::R(i, j).gensym()).collect();
        alphabet.extend((1..=n).map(|i| IntFormGen::Phi(i).gensym()));
        alphabet.extend((1..=m).map(|i| IntFormGen::Psi(i).gensym()));
        alphabet.extend((1..=m).map(|i| IntFormGen::Chi(i).gensym()));
        let formal = Arc::new(SpecBuilder::<RatFunc>::new("free(r,phi,psi,chi)", alphabet).build()?);
        let ambient = match group {
            Group::SL => Ambient::Sl(SLAlgebra::new(n, SlStrategy::Diagonal74)?),
            Group::GL => Ambient::Gl(MatrixAlgebra::new(n, MatrixOrder::Triangular)?),
        };
        Ok(Self {
            n,
            group,
            ambient,
            formal,
            lifts: Mutex::new(HashMap::new()),
            rules: Mutex::new(None),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn formal_spec(&self) -> &Arc<AlgebraSpec<RatFunc>> {
        &self.formal
    }

    pub fn ambient_spec(&self) -> &Arc<AlgebraSpec<RatFunc>> {
        match &self.ambient {
            Ambient::Sl(a) => a.spec(),
            Ambient::Gl(a) => a.spec(),
        }
    }

    fn valid(&self, g: IntFormGen) -> bool {
        let m = self.n + 1;
        let ok = |i: usize| (1..=m).contains(&i);
        match g {
            IntFormGen::R(i, j) => ok(i) && ok(j),
            IntFormGen::Phi(i) => (1..=self.n).contains(&i),
            IntFormGen::Psi(i) | IntFormGen::Chi(i) => ok(i),
        }
    }

    /// The generator as a formal expression.
    pub fn gen(&self, g: IntFormGen) -> Result<P> {
        if !self.valid(g) {
            return Err(Error::UnknownGenerator(format!("{} for n = {}", g.gensym(), self.n)));
        }
        Ok(Poly::word(Word::letter(self.formal.letter(g.gensym())?)))
    }

    fn g(&self, g: IntFormGen) -> P {
        self.gen(g).expect("index in range")
    }

    pub fn r(&self, i: usize, j: usize) -> P {
        self.g(IntFormGen::R(i, j))
    }

    pub fn chi(&self, i: usize) -> P {
        self.g(IntFormGen::Chi(i))
    }

    pub fn phi(&self, i: usize) -> P {
        self.g(IntFormGen::Phi(i))
    }

    pub fn psi(&self, i: usize) -> P {
        self.g(IntFormGen::Psi(i))
    }

    /// r_11 r_22 ... r_kk (formal, 1 for k = 0).
    pub fn diag_prefix(&self, k: usize) -> P {
        prod(&(1..=k).map(|s| self.r(s, s)).collect::<Vec<_>>())
    }

    pub fn gen_of_letter(&self, l: Letter) -> IntFormGen {
        IntFormGen::from_gensym(self.formal.gensym(l)).expect("formal alphabet")
    }

    pub fn fmt(&self, p: &P) -> String {
        self.formal.fmt_poly(p)
    }

    pub fn fmt_ambient(&self, p: &P) -> String {
        self.ambient_spec().fmt_poly(p)
    }

    pub fn fmt_tensor(&self, t: &Tensor<RatFunc>) -> String {
        fmt_tensor_with(&self.formal, t)
    }

    fn x(&self, i: usize, j: usize) -> P {
        match &self.ambient {
            Ambient::Sl(a) => a.x(i, j),
            Ambient::Gl(a) => a.x(i, j),
        }
    }

    pub fn ambient_mul(&self, a: &P, b: &P) -> Result<P> {
        self.ambient_spec().mul(a, b)
    }

    pub fn ambient_coproduct(&self, a: &P) -> Result<Tensor<RatFunc>> {
        match &self.ambient {
            Ambient::Sl(s) => s.coproduct(a),
            Ambient::Gl(s) => s.coproduct(a),
        }
    }

    pub fn ambient_counit(&self, a: &P) -> RatFunc {
        match &self.ambient {
            Ambient::Sl(s) => s.counit(a),
            Ambient::Gl(s) => s.counit(a),
        }
    }

    /// The antipode of F_q[SL]; not available on the polynomial part of GL,
    /// where it needs det_q^-1.
    pub fn ambient_antipode(&self, a: &P) -> Result<P> {
        match &self.ambient {
            Ambient::Sl(s) => s.antipode(a),
            Ambient::Gl(_) => Err(Error::OutOfForm("the GL antipode leaves the polynomial part".into())),
        }
    }

    fn lift_gen(&self, g: IntFormGen) -> Result<P> {
        let inv = qm1().inverse()?;
        let one = P::one();
        Ok(match g {
            IntFormGen::R(i, j) if i == j => self.x(i, i),
            IntFormGen::R(i, j) => self.x(i, j).scale(&qq().inverse()?),
            IntFormGen::Chi(i) => self.x(i, i).minus(&one).scale(&inv),
            IntFormGen::Phi(i) => self.x(i, i).minus(&self.x(i + 1, i + 1)).scale(&inv),
            IntFormGen::Psi(i) => {
                let d: Vec<P> = (1..=i).map(|s| self.x(s, s)).collect();
                self.ambient_spec().mul_all(&d)?.minus(&one).scale(&inv)
            }
        })
    }

    /// The element of the ambient algebra a formal expression stands for.
    pub fn lift(&self, p: &P) -> Result<P> {
        let target = self.ambient_spec().clone();
        algebra_map(p, &target, &mut |l| {
            if let Some(v) = self.lifts.lock().unwrap().get(&l) {
                return Ok(v.clone());
            }
            let v = self.lift_gen(self.gen_of_letter(l))?;
            self.lifts.lock().unwrap().insert(l, v.clone());
            Ok(v)
        })
    }

    pub fn lift_tensor(&self, t: &Tensor<RatFunc>) -> Result<Tensor<RatFunc>> {
        let mut cache: HashMap<Word, P> = HashMap::new();
        let mut get = |w: &Word| -> Result<P> {
            if let Some(p) = cache.get(w) {
                return Ok(p.clone());
            }
            let p = self.lift(&Poly::word(w.clone()))?;
            cache.insert(w.clone(), p.clone());
            Ok(p)
        };
        let mut out = Tensor::zero(2);
        for (ws, c) in t.iter() {
            let a = get(&ws[0])?;
            let b = get(&ws[1])?;
            out.add_scaled(&Tensor::outer(&a, &b), c);
        }
        Ok(out)
    }

    /// Rewrites r_ii, φ_i, ψ_i in terms of χ: r_ii = 1 + (q-1)χ_i,
    /// φ_i = χ_i - χ_{i+1}, ψ_i = Σ_{j≤i} r_11...r_{j-1,j-1} χ_j.
    pub fn to_chi(&self, p: &P) -> Result<P> {
        let diag = |s: usize| P::one().plus(&self.chi(s).scale(&qm1()));
        algebra_map(p, &self.formal, &mut |l| {
            Ok(match self.gen_of_letter(l) {
                IntFormGen::R(i, j) if i == j => diag(i),
                IntFormGen::Phi(i) => self.chi(i).minus(&self.chi(i + 1)),
                IntFormGen::Psi(i) => {
                    let mut out = P::zero();
                    for j in 1..=i {
                        let mut f: Vec<P> = (1..j).map(diag).collect();
                        f.push(self.chi(j));
                        out = out.plus(&prod(&f));
                    }
                    out
                }
                _ => Poly::word(Word::letter(l)),
            })
        })
    }

    /// Δ on the generators r_ij (i ≠ j) and χ_i, read off from Δ(ρ_ij) = Σ ρ_ik ⊗ ρ_kj.
    fn coproduct_gen(&self, g: IntFormGen) -> Tensor<RatFunc> {
        let m = self.n + 1;
        let o = |a: &P, b: &P| Tensor::outer(a, b);
        let one = P::one();
        let diag = |s: usize| P::one().plus(&self.chi(s).scale(&qm1()));
        let mut t = Tensor::zero(2);
        match g {
            IntFormGen::R(i, j) if i != j => {
                t.add_scaled(&o(&diag(i), &self.r(i, j)), &RatFunc::one());
                t.add_scaled(&o(&self.r(i, j), &diag(j)), &RatFunc::one());
                let c = qm1().mul_ref(&qi1());
                for k in (1..=m).filter(|&k| k != i && k != j) {
                    t.add_scaled(&o(&self.r(i, k), &self.r(k, j)), &c);
                }
            }
            IntFormGen::Chi(i) => {
                t.add_scaled(&o(&self.chi(i), &one), &RatFunc::one());
                t.add_scaled(&o(&one, &self.chi(i)), &RatFunc::one());
                t.add_scaled(&o(&self.chi(i), &self.chi(i)), &qm1());
                let c = qm1().mul_ref(&rpow(&qi1(), 2));
                for k in (1..=m).filter(|&k| k != i) {
                    t.add_scaled(&o(&self.r(i, k), &self.r(k, i)), &c);
                }
            }
            _ => unreachable!("coproduct_gen is called after to_chi"),
        }
        t
    }

    /// A formal expression for Δ(p) in the free algebra ⊗ free algebra. Its
    /// coefficients are Laurent whenever those of p are.
    pub fn formal_coproduct(&self, p: &P) -> Result<Tensor<RatFunc>> {
        let p = self.to_chi(p)?;
        let f: &AlgebraSpec<RatFunc> = &self.formal;
        tensor_algebra_map(&p, &[f, f], &mut |l| Ok(self.coproduct_gen(self.gen_of_letter(l))))
    }

    pub fn formal_counit(&self, p: &P) -> Result<RatFunc> {
        let p = self.to_chi(p)?;
        Ok(p.coeff(&Word::empty()))
    }

    /// d̃et_q of the submatrix (rows, cols) of r, with the power of (q - q^-1)
    /// counting off-diagonal entries, so that ρ-minor = d̃et_q(r-minor).
    pub fn det_tilde(&self, rows: &[usize], cols: &[usize]) -> P {
        let k = rows.len();
        let mut out = P::zero();
        for perm in (0..k).permutations(k) {
            let off = (0..k).filter(|&t| rows[t] != cols[perm[t]]).count() as i64;
            let c = mq(inversions(&perm) as i64).mul_ref(&rpow(&qq(), off));
            let f: Vec<P> = (0..k).map(|t| self.r(rows[t], cols[perm[t]])).collect();
            out.add_scaled(&prod(&f), &c);
        }
        out
    }

    /// S(r_ij) as a formal expression, from S(ρ_ij) = (-q)^e ρ-minor with the
    /// locked exponent convention.
    pub fn antipode_r(&self, i: usize, j: usize) -> P {
        let m = self.n + 1;
        let rows: Vec<usize> = (1..=m).filter(|&h| h != j).collect();
        let cols: Vec<usize> = (1..=m).filter(|&k| k != i).collect();
        let e = antipode_convention().exponent(i, j);
        let pre = if i == j { RatFunc::one() } else { rpow(&qq(), -1) };
        self.det_tilde(&rows, &cols).scale(&mq(e).mul_ref(&pre))
    }

    /// A formal expression for S(p) (SL only).
    pub fn formal_antipode(&self, p: &P) -> Result<P> {
        if self.group == Group::GL {
            return Err(Error::OutOfForm("the GL antipode leaves the polynomial part".into()));
        }
        let p = self.to_chi(p)?;
        let mut images: HashMap<Letter, P> = HashMap::new();
        let formal = self.formal.clone();
        anti_algebra_map(&p, &formal, &mut |l| {
            if let Some(v) = images.get(&l) {
                return Ok(v.clone());
            }
            let v = match self.gen_of_letter(l) {
                IntFormGen::R(i, j) => self.to_chi(&self.antipode_r(i, j))?,
                IntFormGen::Chi(i) => {
                    let s = self.to_chi(&self.antipode_r(i, i))?;
                    divide_formal(&s.minus(&P::one()))?
                }
                _ => unreachable!(),
            };
            images.insert(l, v.clone());
            Ok(v)
        })
    }

    /// Expansion of an ambient element in the lattice basis: ordered
    /// monomials (lower r's)(χ_1^a_1 ... χ_m^a_m)(upper r's), with a vanishing
    /// exponent in SL. The result is a formal expression whose lift is `a`.
    pub fn lattice_expansion(&self, a: &P) -> Result<P> {
        let spec = self.ambient_spec().clone();
        let m = self.n + 1;
        let diag_letter: Vec<Letter> = (1..=m).map(|i| spec.letter(GenSym::x(i, i))).collect::<Result<_>>()?;
        let a = spec.nf(a)?;
        let mut rest: BTreeMap<(usize, Word), RatFunc> = BTreeMap::new();
        for (w, c) in a.iter() {
            rest.insert((self.diag_degree(&spec, w), w.clone()), c.clone());
        }
        let mut out = P::zero();
        while let Some(((_, w), c)) = rest.pop_last() {
            if c.is_zero() {
                continue;
            }
            let (lower, expo, upper) = self.split_triangular(&spec, &w)?;
            let deg: usize = expo.iter().sum();
            let kappa = c.mul_ref(&rpow(&qm1(), deg as i64)).mul_ref(&rpow(&qq(), (lower.len() + upper.len()) as i64));
            let mut factors: Vec<P> = lower.iter().map(|&(i, j)| self.r(i, j)).collect();
            for (s, &k) in expo.iter().enumerate() {
                factors.extend(std::iter::repeat(self.chi(s + 1)).take(k));
            }
            factors.extend(upper.iter().map(|&(i, j)| self.r(i, j)));
            out.add_scaled(&prod(&factors), &kappa);
            // the lift of that monomial is c·w plus words with smaller diagonal part
            for b in expo.iter().map(|&k| 0..=k).multi_cartesian_product() {
                if b == expo {
                    continue;
                }
                let mut coef = c.clone();
                for (s, &k) in expo.iter().enumerate() {
                    let bin = binomial(k, b[s]);
                    let sign = if (k - b[s]) % 2 == 0 { 1 } else { -1 };
                    coef = coef.mul_ref(&RatFunc::from_int(bin * sign));
                }
                let mut word: Vec<Letter> = Vec::new();
                let lw: Vec<Letter> = w.0[..lower.len()].to_vec();
                word.extend(lw);
                for (s, &k) in b.iter().enumerate() {
                    word.extend(std::iter::repeat(diag_letter[s]).take(k));
                }
                word.extend(w.0[w.len() - upper.len()..].iter().copied());
                let key = (b.iter().sum(), Word(word));
                let e = rest.entry(key).or_insert_with(RatFunc::zero);
                *e = e.sub_ref(&coef);
            }
        }
        Ok(out)
    }

    fn diag_degree(&self, spec: &AlgebraSpec<RatFunc>, w: &Word) -> usize {
        w.0.iter().filter(|&&l| {
            let g = spec.gensym(l);
            g.i() == g.j()
        }).count()
    }

    #[allow(clippy::type_complexity)]
    fn split_triangular(&self, spec: &AlgebraSpec<RatFunc>, w: &Word) -> Result<(Vec<(usize, usize)>, Vec<usize>, Vec<(usize, usize)>)> {
        let mut lower = Vec::new();
        let mut expo = vec![0usize; self.n + 1];
        let mut upper = Vec::new();
        let mut stage = 0;
        for &l in &w.0 {
            let g = spec.gensym(l);
            let (i, j) = (g.i(), g.j());
            let s = match i.cmp(&j) {
                std::cmp::Ordering::Greater => 0,
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Less => 2,
            };
            if s < stage {
                return Err(Error::OrderMismatch(spec.fmt_word(w)));
            }
            stage = s;
            match s {
                0 => lower.push((i, j)),
                1 => expo[i - 1] += 1,
                _ => upper.push((i, j)),
            }
        }
        Ok((lower, expo, upper))
    }

    /// Whether the lattice coordinates of `a` are all Laurent.
    pub fn in_lattice(&self, a: &P) -> Result<bool> {
        Ok(self.lattice_expansion(a)?.iter().all(|(_, c)| is_laurent(c)))
    }

    /// Exact (q - 1)-divisibility of an ambient element in the lattice.
    pub fn q_minus_1_divisibility(&self, a: &P) -> Result<Divisibility> {
        let e = self.lattice_expansion(a)?;
        let inv = qm1().inverse()?;
        for (w, c) in e.iter() {
            if !is_laurent(&c.mul_ref(&inv)) {
                let witness = if w.is_empty() { "1".to_string() } else { self.formal.fmt_word(w) };
                return Ok(Divisibility::NotDivisible { witness, coeff: c.clone() });
            }
        }
        Ok(Divisibility::Divisible(e.scale(&inv)))
    }

    /// Coefficient-wise (q - 1)-divisibility in the canonical basis of the
    /// ambient algebra. The quotient is returned in ambient coordinates. This
    /// basis is coarser than the lattice: ρ_12 = (q-1)(1+q^-1) r_12 is not
    /// divisible here.
    pub fn canonical_divisibility(&self, a: &P) -> Result<Divisibility> {
        let a = self.ambient_spec().nf(a)?;
        let inv = qm1().inverse()?;
        for (w, c) in a.iter() {
            if !is_laurent(c) || !is_laurent(&c.mul_ref(&inv)) {
                let witness = if w.is_empty() { "1".to_string() } else { self.ambient_spec().fmt_word(w) };
                return Ok(Divisibility::NotDivisible { witness, coeff: c.clone() });
            }
        }
        Ok(Divisibility::Divisible(a.scale(&inv)))
    }
}

pub(crate) fn prod(f: &[P]) -> P {
    let mut out = P::one();
    for x in f {
        out = out.concat_mul(x);
    }
    out
}

/// Divides every coefficient by (q - 1); fails if one is not divisible.
pub(crate) fn divide_formal(p: &P) -> Result<P> {
    let inv = q_minus_1_pow(-1);
    let mut out = P::zero();
    for (w, c) in p.iter() {
        let d = c.mul_ref(&inv);
        if !is_laurent(&d) {
            return Err(Error::OutOfForm(format!("coefficient {c} is not divisible by q - 1")));
        }
        out.add_term(w.clone(), &d);
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

pub(crate) fn fmt_tensor_with(spec: &AlgebraSpec<RatFunc>, t: &Tensor<RatFunc>) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let show = |w: &Word| if w.is_empty() { "1".to_string() } else { spec.fmt_word(w) };
    t.iter()
        .map(|(ws, c)| {
            let cs = if c.is_one() { String::new() } else { format!("({c})*") };
            format!("{cs}{} ⊗ {}", show(&ws[0]), show(&ws[1]))
        })
        .join(" + ")
}
