//! The packaged verification suites behind `qfun verify`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qfun_core::classical::{cocycle_checks, reference_cobracket, ClassicalGen, LieStructure};
use qfun_core::intform::{
    check_span_identities, hopf_closure, poisson_cobracket, verify_hopf_catalog, verify_relation_catalog, Catalog, Form, Group,
    IntForm, RelationStatus, Specializer, ToralChoice,
};
use qfun_core::ncalg::{Letter, Poly, Tensor, Word};
use qfun_core::qmatrix::{MatrixAlgebra, MatrixOrder};
use qfun_core::qsl::{antipode_convention, convention_holds, AntipodeConvention, BorelSign, GLAlgebra, SLAlgebra, SlStrategy};
use qfun_core::uq::{collapse_at_one, convex_order, root_vector_iterated, root_vector_lusztig, Side, ThetaMaps, UqAlgebra};
use qfun_core::{LaurentPoly, RatFunc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::eval::EvalResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Hopf,
    Intform,
    Pbw,
    Thm53,
    Convex,
    Mu,
    Cobracket,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Intform => "intform",
            Suite::Pbw => "pbw",
            Suite::Thm53 => "thm53",
            Suite::Convex => "convex",
            Suite::Mu => "mu",
            Suite::Cobracket => "cobracket",
        }
    }

    pub fn all() -> [Suite; 7] {
        [Suite::Hopf, Suite::Intform, Suite::Pbw, Suite::Thm53, Suite::Convex, Suite::Mu, Suite::Cobracket]
    }

    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Self::all().to_vec());
        }
        Self::all().into_iter().find(|x| x.name() == s).map(|x| vec![x])
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: Json,
}

impl Check {
    pub fn to_json(&self) -> Json {
        json!({ "suite": self.suite, "name": self.name, "pass": self.pass, "detail": self.detail })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub n: usize,
    pub seed: u64,
    pub max_degree: usize,
    pub strategy: SlStrategy,
    pub order: MatrixOrder,
}

#[derive(Default, Debug)]
pub struct Outcome {
    pub checks: Vec<Check>,
    /// declared variants of printed formulas hit while checking
    pub errata: Vec<Json>,
    /// checks left out because they are out of reach at this rank
    pub skipped: Vec<Json>,
}

impl Outcome {
    fn push(&mut self, suite: &'static str, name: impl Into<String>, pass: bool, detail: Json) {
        self.checks.push(Check { suite, name: name.into(), pass, detail });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Printed formulas that every report flags, whatever was run.
pub fn standing_errata() -> Vec<Json> {
    vec![
        json!({
            "id": "antipode-exponent",
            "printed": "S(x[i,j]) = (-q)^(j-i) * cofactor",
            "used": format!("(-q)^(i-j) * cofactor, convention {}", antipode_convention().name()),
            "why": "the printed exponent fails m(S⊗id)Δ = ε at n = 1",
        }),
        json!({
            "id": "integer-form-index-ranges",
            "printed": "index ranges and factor orders of the integer-form relations",
            "used": "per-record declared readings; run `qfun verify intform` for the list",
            "why": "several displayed relations hold only under a corrected range or order",
        }),
        json!({
            "id": "w0-word",
            "printed": "reduced word of the longest element as displayed",
            "used": "(s_1 ... s_n)(s_1 ... s_{n-1}) ... (s_1)",
            "why": "the displayed word skips a block and is not of maximal length",
        }),
        json!({
            "id": "n-index",
            "printed": "n(i,j) = i - j + sum_{h=0}^{i-1} (n - h)",
            "used": "n(i,j) = (j - i) + sum_{h=0}^{i-2} (n - h)",
            "why": "the printed closed form does not give the position of α(i,j) in the convex order",
        }),
    ]
}

pub fn run(suites: &[Suite], p: &SuiteParams) -> EvalResult<Outcome> {
    let mut out = Outcome::default();
    for s in suites {
        match s {
            Suite::Hopf => hopf(p, &mut out)?,
            Suite::Intform => intform(p, &mut out)?,
            Suite::Pbw => pbw(p, &mut out)?,
            Suite::Thm53 => thm53(p, &mut out)?,
            Suite::Convex => convex(p, &mut out)?,
            Suite::Mu => mu(p, &mut out)?,
            Suite::Cobracket => cobracket(p, &mut out)?,
        }
    }
    Ok(out)
}

type L = LaurentPoly;

fn hopf(p: &SuiteParams, out: &mut Outcome) -> EvalResult<()> {
    const S: &str = "hopf";
    let n = p.n;
    let conv = antipode_convention();
    let other = match conv {
        AntipodeConvention::IMinusJ => AntipodeConvention::JMinusI,
        AntipodeConvention::JMinusI => AntipodeConvention::IMinusJ,
    };
    out.push(
        S,
        "antipode convention",
        convention_holds(conv)? && !convention_holds(other)?,
        json!({ "selected": conv.name(), "rejected": other.name() }),
    );

    let a = SLAlgebra::<L>::new(n, p.strategy)?;
    let s = a.spec().as_ref();
    let m = n + 1;
    for i in 1..=m {
        for j in 1..=m {
            let mut failed = Vec::new();
            let x = a.x(i, j);
            let d = a.coproduct(&x)?;
            let left = d.expand_factor(0, 2, |w| a.coproduct(&Poly::word(w.clone())))?;
            let right = d.expand_factor(1, 2, |w| a.coproduct(&Poly::word(w.clone())))?;
            if left.normalize(&[s, s, s])? != right.normalize(&[s, s, s])? {
                failed.push("coassociativity");
            }
            let mut lc = Poly::zero();
            let mut rc = Poly::zero();
            for (k, c) in d.iter() {
                lc.add_scaled(&Poly::word(k[1].clone()), &c.mul_ref(&a.counit(&Poly::word(k[0].clone()))));
                rc.add_scaled(&Poly::word(k[0].clone()), &c.mul_ref(&a.counit(&Poly::word(k[1].clone()))));
            }
            if lc != x {
                failed.push("left counit");
            }
            if rc != x {
                failed.push("right counit");
            }
            let (l, r) = a.antipode_axiom(i, j)?;
            let eps = if i == j { Poly::one() } else { Poly::zero() };
            if l != eps {
                failed.push("left antipode");
            }
            if r != eps {
                failed.push("right antipode");
            }
            out.push(S, format!("SL axioms on x[{i},{j}]"), failed.is_empty(), json!({ "failed": failed }));
        }
    }

    let g = GLAlgebra::<L>::new(n, p.order.clone())?;
    let mut bad = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            let (l, r) = g.antipode_axiom(i, j)?;
            let eps = g.element(&if i == j { Poly::one() } else { Poly::zero() })?;
            if !g.equal(&l, &eps)? || !g.equal(&r, &eps)? {
                bad.push(format!("x[{i},{j}]"));
            }
        }
    }
    out.push(S, "GL antipode axioms", bad.is_empty(), json!({ "failed": bad }));

    let mat = MatrixAlgebra::<L>::new(n, p.order.clone())?;
    let rep = mat.verify_detq_central_grouplike()?;
    out.push(
        S,
        "det_q central and group-like in M",
        rep.all_pass(),
        json!({ "grouplike": rep.grouplike, "counit_one": rep.counit_one,
                "not_central": rep.central.iter().filter(|(_, ok)| !ok).map(|(ij, _)| ij).collect::<Vec<_>>() }),
    );
    let det = a.import(&mat.det_q()?, mat.spec())?;
    out.push(S, "det_q = 1 in SL", a.nf(&det)? == Poly::one(), Json::Null);
    Ok(())
}

fn pbw(p: &SuiteParams, out: &mut Outcome) -> EvalResult<()> {
    const S: &str = "pbw";
    let n = p.n;
    let m = n + 1;
    let mat = MatrixAlgebra::<L>::new(n, p.order.clone())?;
    let rep = mat.spec().confluence_check(3)?;
    out.push(
        S,
        format!("M confluence ({} order)", p.order.name()),
        rep.is_confluent(),
        json!({ "triples": rep.triples_checked, "failures": rep.failures.len() }),
    );
    let cap = match n {
        1 => 5,
        2 => 4,
        _ => 3,
    }
    .min(p.max_degree);
    let vars = m * m;
    let mut got = vec![0usize; cap + 1];
    for w in mat.pbw_basis(cap) {
        got[w.len()] += 1;
    }
    let want: Vec<usize> = (0..=cap).map(|d| binomial(d + vars - 1, vars - 1)).collect();
    out.push(S, "M ordered monomials per degree", got == want, json!({ "got": got, "commutative": want }));

    let sl = SLAlgebra::<L>::new(n, p.strategy)?;
    let got = sl.pbw_counts(cap);
    let want = commutative_hilbert(m, cap);
    out.push(S, format!("SL canonical monomials ({})", p.strategy.name()), got == want, json!({ "got": got, "hilbert": want }));
    let d = SLAlgebra::<L>::new(n, SlStrategy::Diagonal74)?.pbw_counts(cap);
    let a = SLAlgebra::<L>::new(n, SlStrategy::Antidiag73)?.pbw_counts(cap);
    out.push(S, "both monomial sets have equal counts", d == a, json!({ "diagonal": d, "antidiagonal": a }));

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let samples = 20;
    let mut bad = Vec::new();
    for _ in 0..samples {
        let len = rng.gen_range(1..=p.max_degree.max(1));
        let w: Vec<Letter> = (0..len).map(|_| sl.letter(rng.gen_range(1..=m), rng.gen_range(1..=m))).collect();
        let raw = Poly::word(Word(w));
        let nf = sl.nf(&raw)?;
        let canonical = nf.iter().all(|(w, _)| sl.is_canonical_word(w));
        let stable = sl.nf(&nf)? == nf;
        let path = sl.spec().nf_random_path(&raw, &mut rng)? == nf;
        if !(canonical && stable && path) {
            bad.push(sl.spec().fmt_poly(&raw));
        }
    }
    out.push(S, "SL reduction canonical and path independent", bad.is_empty(), json!({ "samples": samples, "failed": bad }));
    Ok(())
}

fn binomial(a: usize, b: usize) -> usize {
    (0..b).fold(1usize, |acc, k| acc * (a - k) / (k + 1))
}

/// Graded Hilbert function of k[x_ij] / (det), by exact rank of the ideal
/// piece. Degree d of it counts the canonical SL monomials of degree d.
pub fn commutative_hilbert(m: usize, degree: usize) -> Vec<usize> {
    let vars = m * m;
    let monomials = |d: usize| -> Vec<Vec<usize>> {
        fn rec(v: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == v - 1 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for k in 0..=left {
                cur.push(k);
                rec(v, left - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(vars, d, &mut Vec::new(), &mut out);
        out
    };
    let mut det: Vec<(Vec<usize>, i64)> = Vec::new();
    for perm in permutations(m) {
        let mut e = vec![0; vars];
        for (i, &j) in perm.iter().enumerate() {
            e[i * m + j] += 1;
        }
        let inv = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
        det.push((e, if inv % 2 == 0 { 1 } else { -1 }));
    }
    let mut out = Vec::new();
    for d in 0..=degree {
        let mons = monomials(d);
        if d < m {
            out.push(mons.len());
            continue;
        }
        let col: HashMap<Vec<usize>, usize> = mons.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        let rows = monomials(d - m)
            .into_iter()
            .map(|mm| {
                det.iter()
                    .map(|(e, s)| {
                        let v: Vec<usize> = e.iter().zip(&mm).map(|(a, b)| a + b).collect();
                        (col[&v], BigRational::from_integer(BigInt::from(*s)))
                    })
                    .collect()
            })
            .collect();
        out.push(mons.len() - rank(rows));
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn rank(rows: Vec<BTreeMap<usize, BigRational>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&lead, c)) = row.iter().next() else { break };
            let c = c.clone();
            match pivots.get(&lead) {
                Some(p) => {
                    for (k, v) in p {
                        let e = row.entry(*k).or_insert_with(BigRational::zero);
                        *e -= v * &c;
                        if e.is_zero() {
                            row.remove(k);
                        }
                    }
                }
                None => {
                    let inv = BigRational::one() / c;
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn thm53(p: &SuiteParams, out: &mut Outcome) -> EvalResult<()> {
    let uq = UqAlgebra::new(p.n)?;
    let co = convex_order(p.n);
    for &(i, j) in &co.roots {
        for side in [Side::E, Side::F] {
            let k = co.n_index(i, j);
            let l = root_vector_lusztig(&uq, &co, k, side)?;
            let it = root_vector_iterated(&uq, i, j, side)?;
            let name = match side {
                Side::E => format!("E at n({i},{j}) = E[{i},{j}]"),
                Side::F => format!("F at n({i},{j}) = F[{j},{i}]"),
            };
            out.push("thm53", name, l == it, json!({ "position": k, "terms": it.len() }));
        }
    }
    Ok(())
}

fn convex(p: &SuiteParams, out: &mut Outcome) -> EvalResult<()> {
    const S: &str = "convex";
    let co = convex_order(p.n);
    out.push(S, "reduced word is reduced", co.is_reduced(), json!({ "word": co.reduced_word }));
    out.push(S, "reduced word is the longest element", co.is_longest(), Json::Null);
    out.push(S, "order on positive roots is convex", co.is_convex(), json!({ "roots": co.roots }));
    let mismatched: Vec<Json> = co
        .roots
        .iter()
        .filter(|&&(i, j)| co.n_index(i, j) != co.position(i, j).unwrap())
        .map(|r| json!(r))
        .collect();
    out.push(S, "closed form n(i,j) gives the position", mismatched.is_empty(), json!({ "mismatched": mismatched }));
    let printed: Vec<Json> = co
        .roots
        .iter()
        .filter(|&&(i, j)| co.n_index_printed(i, j) != co.position(i, j).unwrap() as i64)
        .map(|&(i, j)| json!({ "root": [i, j], "printed": co.n_index_printed(i, j), "position": co.position(i, j) }))
        .collect();
    if !printed.is_empty() {
        out.errata.push(json!({ "id": "n-index", "instances": printed }));
    }
    Ok(())
}

fn mu(p: &SuiteParams, out: &mut Outcome) -> EvalResult<()> {
    const S: &str = "mu";
    let n = p.n;
    let maps = ThetaMaps::new(n)?;
    let uq = maps.uq();
    for sign in [BorelSign::Plus, BorelSign::Minus] {
        let b = maps.borel(sign);
        let spec = b.spec();
        let img = |l: Letter| {
            let g = spec.gensym(l);
            maps.gen_image(sign, g.i(), g.j())
        };
        let mut bad = Vec::new();
        for r in spec.rules() {
            let lhs = uq.mul(&img(r.lhs.0)?, &img(r.lhs.1)?)?;
            let mut rhs = Poly::zero();
            for (w, c) in r.rhs.iter() {
                let f = w.0.iter().map(|l| img(*l)).collect::<Result<Vec<_>, _>>()?;
                rhs.add_scaled(&uq.mul_all(&f)?, &RatFunc::from_laurent(c.clone()));
            }
            if lhs != rhs {
                bad.push(format!("{}{}", spec.gensym(r.lhs.0), spec.gensym(r.lhs.1)));
            }
        }
        let diag = (1..=n + 1).map(|i| maps.gen_image(sign, i, i)).collect::<Result<Vec<_>, _>>()?;
        let diag_ok = uq.mul_all(&diag)? == Poly::one();
        out.push(S, format!("theta {} respects the Borel relations", sign.name()), bad.is_empty() && diag_ok, json!({ "failed": bad }));
        let mut defects = Vec::new();
        for &(i, j) in b.positions() {
            if !maps.coalgebra_defect(sign, i, j)?.is_zero() {
                defects.push([i, j]);
            }
        }
        out.push(S, format!("theta {} is an anti-coalgebra map", sign.name()), defects.is_empty(), json!({ "failed": defects }));
    }

    let s = SLAlgebra::<L>::new(n, SlStrategy::Diagonal74)?;
    let qq = RatFunc::from_laurent(LaurentPoly::q_minus_qinv()).inverse()?;
    let single = |x: &Poly<RatFunc>, left: bool, sign: i64| {
        let t = if left { Tensor::outer(x, &Poly::one()) } else { Tensor::outer(&Poly::one(), x) };
        collapse_at_one(uq, &t.scale(&RatFunc::from_int(sign)))
    };
    let m = n + 1;
    for i in 1..=m {
        for j in 1..=m {
            let t = maps.mu_p(&s, &s.x(i, j))?;
            let t = if i == j { t } else { t.scale(&qq) };
            let got = collapse_at_one(uq, &t)?;
            // (-1)^(j-i) above the diagonal, (-1)^(i-j-1) below it
            let d = (j as i64 - i as i64).abs();
            let sgn = if (if i < j { d } else { d - 1 }) % 2 == 0 { 1 } else { -1 };
            let want = if i < j {
                single(&root_vector_iterated(uq, i, j, Side::F)?, true, sgn)?
            } else if i > j {
                single(&root_vector_iterated(uq, j, i, Side::E)?, false, sgn)?
            } else {
                single(&Poly::one(), true, 1)?
            };
            out.push(S, format!("leading term of mu_P(r[{i},{j}])"), got == want, json!({ "collapsed": got.fmt_with(uq) }));
        }
    }
    Ok(())
}

fn cobracket(p: &SuiteParams, out: &mut Outcome) -> EvalResult<()> {
    const S: &str = "cobracket";
    let n = p.n;
    let lie = LieStructure::build_h(n)?;
    let checks = cocycle_checks(&lie)?;
    let bad: Vec<String> = checks.iter().filter(|c| !c.holds()).map(|c| format!("({:?}, {:?})", c.x, c.y)).collect();
    out.push(S, "cocycle identity on generators of h", bad.is_empty(), json!({ "pairs": checks.len(), "failed": bad }));

    let f = IntForm::new(n, Group::SL)?;
    let sp = Specializer::new(n, Group::SL, ToralChoice::Printed)?;
    let minus = -BigRational::one();
    for i in 1..=n {
        let cases = [
            (format!("delta(r[{i},{}]) = delta(-f[{}])", i + 1, i), f.r(i, i + 1), reference_cobracket(sp.lie(), ClassicalGen::F(i))?.scale(&minus)),
            (format!("delta(phi[{i}]) = delta(h[{i}])"), f.phi(i), reference_cobracket(sp.lie(), ClassicalGen::H(i))?),
            (format!("delta(r[{},{i}]) = delta(e[{i}])", i + 1), f.r(i + 1, i), reference_cobracket(sp.lie(), ClassicalGen::E(i))?),
        ];
        for (name, x, want) in cases {
            match poisson_cobracket(&f, &sp, &x) {
                Ok(got) => out.push(S, name, got == want, json!({ "got": got.fmt_with(sp.lie()), "want": want.fmt_with(sp.lie()) })),
                Err(e) => out.push(S, name, false, json!({ "error": e.to_string() })),
            }
        }
    }

    // GL: c central in h', δ(c) as displayed
    let g = IntForm::new(n, Group::GL)?;
    let printed = Specializer::new(n, Group::GL, ToralChoice::Printed)?;
    let trace = Specializer::new(n, Group::GL, ToralChoice::Trace)?;
    let want = reference_cobracket(printed.lie(), ClassicalGen::C)?;
    let got = poisson_cobracket(&g, &printed, &g.chi(n + 1))?;
    out.push(S, "GL: delta(chi[n+1]) equals the displayed delta(c)", got == want, json!({ "got": got.fmt_with(printed.lie()) }));
    let mut broken = 0;
    for form in Form::all() {
        for r in verify_relation_catalog(&g, form)?.records {
            if let Some(id) = &r.identity {
                if !printed.specialize(&g, id)?.is_zero() {
                    broken += 1;
                }
            }
        }
    }
    out.push(
        S,
        "GL: chi[n+1] -> c respects the relations (c central)",
        broken == 0,
        json!({ "relations_not_preserved": broken }),
    );
    let tr = (1..=n + 1).fold(Poly::zero(), |acc, i| acc.plus(&g.chi(i)));
    let got = poisson_cobracket(&g, &trace, &tr)?;
    out.push(
        S,
        "GL: sum of chi -> c has the displayed delta(c)",
        got == want,
        json!({ "got": got.fmt_with(trace.lie()), "want": want.fmt_with(trace.lie()) }),
    );
    let lie_p = LieStructure::build_h_prime(n)?;
    let bad: Vec<String> = cocycle_checks(&lie_p)?.iter().filter(|c| !c.holds()).map(|c| format!("({:?}, {:?})", c.x, c.y)).collect();
    out.push(S, "cocycle identity on generators of h'", bad.is_empty(), json!({ "failed": bad }));
    Ok(())
}

fn catalog_check(out: &mut Outcome, kind: &str, c: &Catalog) {
    let (v, k, f) = c.counts();
    let failed: Vec<Json> = c.failed().map(|r| json!({ "id": r.id, "indices": r.indices })).collect();
    out.push("intform", format!("{kind} catalog, {} form", c.form.name()), f == 0, json!({ "verified": v, "corrected": k, "failed": failed }));
    for r in c.corrected() {
        if let RelationStatus::Corrected { variant } = &r.status {
            out.errata.push(json!({ "id": r.id, "indices": r.indices, "form": c.form.name(), "used": variant }));
        }
    }
}

fn intform(p: &SuiteParams, out: &mut Outcome) -> EvalResult<()> {
    const S: &str = "intform";
    let n = p.n;
    let f = IntForm::new(n, Group::SL)?;
    let sp = Specializer::new(n, Group::SL, ToralChoice::Printed)?;
    // the catalogs and the closure blow up at n = 3 (minutes, then memory)
    let full = n <= 2;
    if !full {
        out.skipped.push(json!({ "suite": S, "what": "relation and Hopf catalogs, Hopf closure, psi certificates", "reason": "run for n <= 2 only" }));
    }
    for form in Form::all().into_iter().filter(|_| full) {
        let c = verify_relation_catalog(&f, form)?;
        catalog_check(out, "relation", &c);
        let mut nonzero = Vec::new();
        let mut total = 0;
        for r in &c.records {
            if let Some(id) = &r.identity {
                total += 1;
                if !sp.specialize(&f, id)?.is_zero() {
                    nonzero.push(json!({ "id": r.id, "indices": r.indices }));
                }
            }
        }
        out.push(
            S,
            format!("relations of the {} form vanish at q = 1 under the specialization", form.name()),
            nonzero.is_empty(),
            json!({ "identities": total, "nonzero": nonzero }),
        );
        catalog_check(out, "Hopf", &verify_hopf_catalog(&f, form)?);
    }
    for s in check_span_identities(&f)? {
        out.push(S, s.name, s.holds, json!(s.detail));
    }
    if full {
        let closure = hopf_closure(&f)?;
        let bad: Vec<String> = closure.iter().filter(|r| !r.holds()).map(|r| format!("{:?}", r.gen)).collect();
        out.push(S, "Delta, eps, S of every generator have Laurent expressions", bad.is_empty(), json!({ "failed": bad }));
    }
    for i in (1..=n + 1).filter(|_| full) {
        let s = f.formal_antipode(&f.psi(i))?.plus(&f.psi(i));
        let cert = f.congruence_certificate(&s)?;
        out.push(
            S,
            format!("S(psi[{i}]) + psi[{i}] is divisible by q - 1"),
            cert.is_some(),
            json!(cert.map(|w| format!("(q - 1)*({})", f.fmt(&w)))),
        );
    }
    Ok(())
}
