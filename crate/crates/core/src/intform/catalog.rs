//! The displayed relations and Hopf formulas of the three integer forms,
//! transcribed as printed and checked instance by instance in the ambient
//! algebra. A failing formula is retried against a short list of declared
//! readings (index typos, sign slips); the record says which one holds.

use itertools::Itertools;

use super::{mq, prod, qi1, qm1, qq, rpow, Form, Group, IntForm, P};
use crate::coeffring::RatFunc;
use crate::error::Result;
use crate::ncalg::Tensor;
use crate::qmatrix::inversions;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationStatus {
    Verified,
    Corrected { variant: String },
    Failed { residual: String },
}

#[derive(Clone, Debug)]
pub struct RelationRecord {
    pub id: String,
    pub indices: Vec<usize>,
    pub printed: String,
    pub status: RelationStatus,
    /// lhs - rhs of the version that holds (relations only), as a formal
    /// expression; used for the specialization at q = 1.
    pub identity: Option<P>,
}

impl RelationRecord {
    pub fn holds(&self) -> bool {
        !matches!(self.status, RelationStatus::Failed { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (status, detail) = match &self.status {
            RelationStatus::Verified => ("verified", serde_json::Value::Null),
            RelationStatus::Corrected { variant } => ("corrected", variant.clone().into()),
            RelationStatus::Failed { residual } => ("failed", residual.clone().into()),
        };
        serde_json::json!({
            "id": self.id,
            "indices": self.indices,
            "printed": self.printed,
            "status": status,
            "detail": detail,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub form: Form,
    pub group: Group,
    pub n: usize,
    pub records: Vec<RelationRecord>,
}

impl Catalog {
    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| r.holds())
    }

    /// (verified, corrected, failed)
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for r in &self.records {
            match r.status {
                RelationStatus::Verified => c.0 += 1,
                RelationStatus::Corrected { .. } => c.1 += 1,
                RelationStatus::Failed { .. } => c.2 += 1,
            }
        }
        c
    }

    pub fn failed(&self) -> impl Iterator<Item = &RelationRecord> {
        self.records.iter().filter(|r| !r.holds())
    }

    pub fn corrected(&self) -> impl Iterator<Item = &RelationRecord> {
        self.records.iter().filter(|r| matches!(r.status, RelationStatus::Corrected { .. }))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (v, c, f) = self.counts();
        serde_json::json!({
            "form": self.form.name(),
            "group": format!("{:?}", self.group),
            "n": self.n,
            "verified": v,
            "corrected": c,
            "failed": f,
            "records": self.records.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    }
}

enum Check {
    Rel(P, P),
    Co(P, Tensor<RatFunc>),
    Anti(P, P),
    Counit(P, RatFunc),
    /// S(x) ≡ y modulo (q - 1) times the integer form.
    AntiModQm1(P, P),
    /// The printed formula cannot be evaluated as written.
    Unwritable(&'static str),
}

struct Entry {
    id: &'static str,
    text: &'static str,
    idx: Vec<usize>,
    printed: Check,
    variants: Vec<(&'static str, Check)>,
}

fn entry(id: &'static str, text: &'static str, idx: Vec<usize>, printed: Check) -> Entry {
    Entry {
        id,
        text,
        idx,
        printed,
        variants: Vec::new(),
    }
}

impl Entry {
    fn or(mut self, name: &'static str, c: Check) -> Self {
        self.variants.push((name, c));
        self
    }
}

fn truncate(s: String) -> String {
    if s.chars().count() > 240 {
        let t: String = s.chars().take(240).collect();
        format!("{t} ...")
    } else {
        s
    }
}

/// None when the check holds, otherwise a description of the residual.
fn eval(f: &IntForm, c: &Check) -> Result<Option<String>> {
    Ok(match c {
        Check::Rel(l, r) => {
            let d = f.lift(&l.minus(r))?;
            (!d.is_zero()).then(|| truncate(f.fmt_ambient(&d)))
        }
        Check::Co(x, t) => {
            let want = f.ambient_coproduct(&f.lift(x)?)?;
            let got = f.lift_tensor(t)?;
            let d = want.minus(&got);
            (!d.is_zero()).then(|| truncate(super::fmt_tensor_with(f.ambient_spec(), &d)))
        }
        Check::Anti(x, y) => {
            let d = f.ambient_antipode(&f.lift(x)?)?.minus(&f.lift(y)?);
            (!d.is_zero()).then(|| truncate(f.fmt_ambient(&d)))
        }
        Check::Counit(x, v) => {
            let e = f.ambient_counit(&f.lift(x)?);
            (e != *v).then(|| format!("ε = {e}"))
        }
        Check::AntiModQm1(x, y) => {
            let s = f.formal_antipode(x)?;
            match f.congruence_certificate(&s.minus(y))? {
                Some(_) => None,
                None => Some("no (q - 1)-divisibility certificate found".into()),
            }
        }
        Check::Unwritable(why) => Some(format!("not evaluable as printed: {why}")),
    })
}

fn run(f: &IntForm, e: Entry) -> Result<RelationRecord> {
    let identity_of = |c: &Check| match c {
        Check::Rel(l, r) => Some(l.minus(r)),
        _ => None,
    };
    let mut rec = RelationRecord {
        id: e.id.to_string(),
        indices: e.idx,
        printed: e.text.to_string(),
        status: RelationStatus::Verified,
        identity: identity_of(&e.printed),
    };
    let residual = match eval(f, &e.printed)? {
        None => return Ok(rec),
        Some(r) => r,
    };
    for (name, c) in &e.variants {
        if eval(f, c)?.is_none() {
            rec.status = RelationStatus::Corrected { variant: name.to_string() };
            rec.identity = identity_of(c);
            return Ok(rec);
        }
    }
    rec.status = RelationStatus::Failed { residual };
    rec.identity = None;
    Ok(rec)
}

fn k(c: i64) -> RatFunc {
    RatFunc::from_int(c)
}

fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// (q-1)^a (1+q^-1)^b
fn qc(a: i64, b: i64) -> RatFunc {
    rpow(&qm1(), a).mul_ref(&rpow(&qi1(), b))
}

fn comm(a: &P, b: &P) -> P {
    a.concat_mul(b).minus(&b.concat_mul(a))
}

fn mul(a: &P, b: &P) -> P {
    a.concat_mul(b)
}

/// Non-identity permutations σ of `set`, as (l(σ), e(σ), Π_t r_{set_t, σ(set_t)}).
fn perm_terms(f: &IntForm, set: &[usize]) -> Vec<(i64, i64, P)> {
    let kk = set.len();
    let mut out = Vec::new();
    for perm in (0..kk).permutations(kk) {
        let e = (0..kk).filter(|&t| perm[t] != t).count() as i64;
        if e == 0 {
            continue;
        }
        let factors: Vec<P> = (0..kk).map(|t| f.r(set[t], set[perm[t]])).collect();
        out.push((inversions(&perm) as i64, e, prod(&factors)));
    }
    out
}

/// Σ_{σ ≠ 1} (-q)^l (q-1)^{e-1} (1+q^-1)^e Π r over permutations of `set`.
fn perm_sum(f: &IntForm, set: &[usize]) -> P {
    let mut out = P::zero();
    for (l, e, p) in perm_terms(f, set) {
        out.add_scaled(&p, &mq(l).mul_ref(&qc(e - 1, e)));
    }
    out
}

fn diag_range(f: &IntForm, from: usize, to: usize) -> P {
    prod(&(from..=to).map(|s| f.r(s, s)).collect::<Vec<_>>())
}

fn common_relations(f: &IntForm) -> Vec<Entry> {
    let m = f.n() + 1;
    let q = RatFunc::q_pow(1);
    let mut v = Vec::new();
    for i in 1..=m {
        for (j, kx) in (1..=m).tuple_combinations() {
            v.push(entry("r.1", "r_ij r_ik = q r_ik r_ij (j < k)", vec![i, j, kx], Check::Rel(mul(&f.r(i, j), &f.r(i, kx)), mul(&f.r(i, kx), &f.r(i, j)).scale(&q))));
        }
    }
    for kx in 1..=m {
        for (i, h) in (1..=m).tuple_combinations() {
            v.push(entry("r.2", "r_ik r_hk = q r_hk r_ik (i < h)", vec![i, h, kx], Check::Rel(mul(&f.r(i, kx), &f.r(h, kx)), mul(&f.r(h, kx), &f.r(i, kx)).scale(&q))));
        }
    }
    for (i, j) in (1..=m).tuple_combinations() {
        for (kx, l) in (1..=m).tuple_combinations() {
            v.push(entry("r.3", "r_il r_jk = r_jk r_il (i < j, k < l)", vec![i, j, kx, l], Check::Rel(mul(&f.r(i, l), &f.r(j, kx)), mul(&f.r(j, kx), &f.r(i, l)))));
            let ex = 1 + delta(i, kx) + delta(j, l) - delta(i, l) - delta(j, kx);
            v.push(entry(
                "r.4",
                "r_ik r_jl - r_jl r_ik = (q-q^-1)^(1+δik+δjl-δil-δjk) r_il r_jk (i < j, k < l)",
                vec![i, j, kx, l],
                Check::Rel(comm(&f.r(i, kx), &f.r(j, l)), mul(&f.r(i, l), &f.r(j, kx)).scale(&rpow(&qq(), ex))),
            ));
        }
    }
    if f.group() == Group::SL {
        let all: Vec<usize> = (1..=m).collect();
        v.push(entry("r.5", "d̃et_q(r) = 1", vec![], Check::Rel(f.det_tilde(&all, &all), P::one())));
    }
    v
}

fn phi_relations(f: &IntForm) -> Vec<Entry> {
    let n = f.n();
    let m = n + 1;
    let r = |i, j| f.r(i, j);
    let mut v = Vec::new();
    for i in 1..=n {
        let ph = f.phi(i);
        let i1 = i + 1;
        v.push(entry("phi.1", "(q-1) φ_i = r_ii - r_{i+1,i+1}", vec![i], Check::Rel(ph.scale(&qm1()), r(i, i).minus(&r(i1, i1)))));
        for j in 1..=m {
            for kx in 1..=m {
                if (j < i && kx > i1) || (j > i1 && kx < i) {
                    v.push(entry("phi.2", "φ_i r_jk - r_jk φ_i = 0 (j < i, k > i+1; j > i+1, k < i)", vec![i, j, kx], Check::Rel(comm(&ph, &r(j, kx)), P::zero())));
                }
                let d = delta(j, kx);
                let body = mul(&r(i1, kx), &r(j, i1)).minus(&mul(&r(i, kx), &r(j, i))).scale(&qc(1 + d, 2 + d));
                if j < i && kx < i {
                    v.push(entry("phi.3", "φ_i r_jk - r_jk φ_i = (q-1)^(1+δjk)(1+q^-1)^(2+δjk)(r_{i+1,k} r_{j,i+1} - r_ik r_ji) (j, k < i)", vec![i, j, kx], Check::Rel(comm(&ph, &r(j, kx)), body.clone())));
                }
                if j > i1 && kx > i1 {
                    v.push(entry("phi.4", "φ_i r_jk - r_jk φ_i = -(q-1)^(1+δjk)(1+q^-1)^(2+δjk)(r_{i+1,k} r_{j,i+1} - r_ik r_ji) (j, k > i+1)", vec![i, j, kx], Check::Rel(comm(&ph, &r(j, kx)), body.negated())));
                }
            }
        }
        let c2 = qc(1, 2);
        for j in 1..=m {
            if j < i {
                v.push(entry("phi.5", "φ_i r_ji - r_ji φ_i = -r_ii r_ji + (q-1)(1+q^-1)^2 r_{j,i+1} r_{i+1,i} (j < i)", vec![i, j], Check::Rel(comm(&ph, &r(j, i)), mul(&r(i, i), &r(j, i)).negated().plus(&mul(&r(j, i1), &r(i1, i)).scale(&c2)))));
                v.push(entry("phi.7", "φ_i r_{j,i+1} - r_{j,i+1} φ_i = r_{i+1,i+1} r_{j,i+1} (j < i)", vec![i, j], Check::Rel(comm(&ph, &r(j, i1)), mul(&r(i1, i1), &r(j, i1)))));
                v.push(entry("phi.9", "φ_i r_ij - r_ij φ_i = -r_ii r_ij + (q-1)(1+q^-1)^2 r_{i,i+1} r_{i+1,j} (j < i)", vec![i, j], Check::Rel(comm(&ph, &r(i, j)), mul(&r(i, i), &r(i, j)).negated().plus(&mul(&r(i, i1), &r(i1, j)).scale(&c2)))));
                v.push(entry("phi.11", "φ_i r_{i+1,j} - r_{i+1,j} φ_i = r_{i+1,i+1} r_{i+1,j} (j < i)", vec![i, j], Check::Rel(comm(&ph, &r(i1, j)), mul(&r(i1, i1), &r(i1, j)))));
            }
            let phi8 = |j: usize| Check::Rel(comm(&ph, &r(j, i1)), mul(&r(j, i1), &r(i1, i1)).negated().plus(&mul(&r(i, i1), &r(j, i)).scale(&c2)));
            let text8 = "φ_i r_{j,i+1} - r_{j,i+1} φ_i = -r_{j,i+1} r_{i+1,i+1} + (q-1)(1+q^-1)^2 r_{i,i+1} r_ji (printed range j < i)";
            if j < i {
                v.push(entry("phi.8", text8, vec![i, j], phi8(j)));
            }
            if j > i1 {
                v.push(entry("phi.8", text8, vec![i, j], Check::Unwritable("index outside the printed range")).or("range read as j > i+1", phi8(j)));
                v.push(entry("phi.6", "φ_i r_ji - r_ji φ_i = r_ji r_ii (j > i+1)", vec![i, j], Check::Rel(comm(&ph, &r(j, i)), mul(&r(j, i), &r(i, i)))));
                v.push(entry("phi.10", "φ_i r_ij - r_ij φ_i = r_ij r_ii (j > i+1)", vec![i, j], Check::Rel(comm(&ph, &r(i, j)), mul(&r(i, j), &r(i, i)))));
                v.push(entry("phi.12", "φ_i r_{i+1,j} - r_{i+1,j} φ_i = -r_{i+1,j} r_{i+1,i+1} + (q-1)(1+q^-1)^2 r_ij r_{i+1,i} (j > i+1)", vec![i, j], Check::Rel(comm(&ph, &r(i1, j)), mul(&r(i1, j), &r(i1, i1)).negated().plus(&mul(&r(i, j), &r(i1, i)).scale(&c2)))));
            }
        }
        let c3 = qc(2, 3);
        v.push(entry("phi.13", "φ_i r_ii - r_ii φ_i = (q-1)^2(1+q^-1)^3 r_{i+1,i} r_{i,i+1}", vec![i], Check::Rel(comm(&ph, &r(i, i)), mul(&r(i1, i), &r(i, i1)).scale(&c3))));
        v.push(entry("phi.14", "φ_i r_{i+1,i+1} - r_{i+1,i+1} φ_i = (q-1)^2(1+q^-1)^3 r_{i+1,i} r_{i,i+1}", vec![i], Check::Rel(comm(&ph, &r(i1, i1)), mul(&r(i1, i), &r(i, i1)).scale(&c3))));
        v.push(entry("phi.15", "φ_i r_{i,i+1} - r_{i,i+1} φ_i = r_{i,i+1} r_ii + r_{i+1,i+1} r_{i,i+1}", vec![i], Check::Rel(comm(&ph, &r(i, i1)), mul(&r(i, i1), &r(i, i)).plus(&mul(&r(i1, i1), &r(i, i1))))));
        v.push(entry("phi.16", "φ_i r_{i+1,i} - r_{i+1,i} φ_i = r_{i+1,i} r_ii + r_{i+1,i+1} r_{i+1,i}", vec![i], Check::Rel(comm(&ph, &r(i1, i)), mul(&r(i1, i), &r(i, i)).plus(&mul(&r(i1, i1), &r(i1, i))))));
        for j in 1..=n {
            let j1 = j + 1;
            let mut rhs = mul(&r(i, j), &r(j, i)).plus(&mul(&r(i1, j1), &r(j1, i1))).minus(&mul(&r(i, j1), &r(j1, i)));
            if i1 != j {
                rhs = rhs.minus(&mul(&r(i1, j), &r(j, i1)));
            }
            let rhs = rhs.scale(&qc(1, 3));
            let lhs_ij = |a: usize, b: usize| comm(&f.phi(a), &f.phi(b));
            let lhs = lhs_ij(i, j);
            let mut e = entry("phi.17", "φ_i φ_j - φ_j φ_i = (q-1)(1+q^-1)^3 (r_ij r_ji + r_{i+1,j+1} r_{j+1,i+1} - r_{i,j+1} r_{j+1,i} - (1-δ_{i+1,j}) r_{i+1,j} r_{j,i+1})", vec![i, j], Check::Rel(lhs, rhs));
            if i == j {
                e = e.or("quantifier read as i ≠ j (both sides of the i = j instance of the left side vanish)", Check::Rel(P::zero(), P::zero()));
            }
            if i > j {
                let (a, b) = (j, i);
                let mut rt = mul(&r(a, b), &r(b, a)).plus(&mul(&r(a + 1, b + 1), &r(b + 1, a + 1))).minus(&mul(&r(a, b + 1), &r(b + 1, a)));
                if a + 1 != b {
                    rt = rt.minus(&mul(&r(a + 1, b), &r(b, a + 1)));
                }
                e = e.or("quantifier read as i < j, the i > j instance following by antisymmetry", Check::Rel(lhs_ij(i, j), rt.scale(&qc(1, 3)).negated()));
            }
            v.push(e);
        }
    }
    v
}

fn psi_relations(f: &IntForm) -> Vec<Entry> {
    let n = f.n();
    let m = n + 1;
    let r = |i, j| f.r(i, j);
    let mut v = Vec::new();
    for i in 1..=m {
        let ps = f.psi(i);
        v.push(entry("psi.1", "(q-1) ψ_i = r_11 ... r_ii - 1", vec![i], Check::Rel(ps.scale(&qm1()), f.diag_prefix(i).minus(&P::one()))));
        for j in 1..=m {
            for kx in 1..=m {
                let eta = (i < j.min(kx)) as i64;
                let zeta = (i >= j.max(kx)) as i64;
                let d = delta(j, kx);
                let mut sum = P::zero();
                if eta != zeta {
                    for s in 1..=i {
                        let t = prod(&[diag_range(f, 1, s - 1), r(s, kx), r(j, s), diag_range(f, s + 1, i)]);
                        sum = sum.plus(&t);
                    }
                    sum = sum.scale(&qc(1 + d, 2 + d).mul_ref(&k(eta - zeta)));
                }
                let ex = 1 - eta - zeta;
                let rhs = mul(&r(j, kx), &ps).scale(&RatFunc::q_pow(ex)).plus(&sum);
                let extra = r(j, kx).scale(&RatFunc::q_pow(ex).sub_ref(&RatFunc::one()).div_ref(&qm1()).expect("q - 1 ≠ 0"));
                // per-summand sign [s < j∧k] - [s > j∨k], which equals η - ζ only when i < j∧k
                let mut signed = P::zero();
                for s in 1..=i {
                    let sg = (s < j.min(kx)) as i64 - (s > j.max(kx)) as i64;
                    if sg != 0 {
                        let t = prod(&[diag_range(f, 1, s - 1), r(s, kx), r(j, s), diag_range(f, s + 1, i)]);
                        signed.add_scaled(&t, &k(sg));
                    }
                }
                let signed = signed.scale(&qc(1 + d, 2 + d).mul_ref(&RatFunc::q_pow(ex)));
                let full = mul(&r(j, kx), &ps).scale(&RatFunc::q_pow(ex)).plus(&extra).plus(&signed);
                v.push(
                    entry(
                        "psi.2",
                        "ψ_i r_jk = q^(1-η-ζ) r_jk ψ_i + (q-1)^(1+δjk)(1+q^-1)^(2+δjk) Σ_s (η-ζ) r_11..r_{s-1,s-1} r_sk r_js r_{s+1,s+1}..r_ii",
                        vec![i, j, kx],
                        Check::Rel(mul(&ps, &r(j, kx)), rhs.clone()),
                    )
                    .or("adds (q^(1-η-ζ) - 1)/(q - 1) r_jk", Check::Rel(mul(&ps, &r(j, kx)), rhs.plus(&extra)))
                    .or(
                        "adds (q^(1-η-ζ) - 1)/(q - 1) r_jk; sum weighted by q^(1-η-ζ) ([s < j∧k] - [s > j∨k]) instead of (η-ζ)",
                        Check::Rel(mul(&ps, &r(j, kx)), full),
                    ),
                );
            }
        }
        for j in i + 1..=m {
            let mut sum = P::zero();
            for kx in i + 1..=j {
                for s in 1..=i {
                    let mid = prod(&[diag_range(f, 1, s - 1), r(s, kx), r(kx, s), diag_range(f, s + 1, i)]);
                    sum = sum.plus(&prod(&[diag_range(f, 1, kx - 1), mid, diag_range(f, kx + 1, j)]));
                }
            }
            v.push(entry(
                "psi.4",
                "ψ_i ψ_j - ψ_j ψ_i = (q-1)(1+q^-1)^3 Σ_{k=i+1}^j Σ_{s=1}^i r_11..r_{k-1,k-1} · r_11..r_{s-1,s-1} r_sk r_ks r_{s+1,s+1}..r_ii · r_{k+1,k+1}..r_jj (i < j)",
                vec![i, j],
                Check::Rel(comm(&ps, &f.psi(j)), sum.scale(&qc(1, 3))),
            ));
        }
    }
    if f.group() == Group::SL {
        let all: Vec<usize> = (1..=m).collect();
        v.push(entry("psi.3", "ψ_{n+1} = -Σ_{σ≠1} (-q)^l(σ) (q-1)^(e(σ)-1) (1+q^-1)^e(σ) r_1σ(1) ... r_{n+1,σ(n+1)}", vec![m], Check::Rel(f.psi(m), perm_sum(f, &all).negated())));
    }
    v
}

fn chi_relations(f: &IntForm) -> Vec<Entry> {
    let n = f.n();
    let m = n + 1;
    let r = |i, j| f.r(i, j);
    let mut v = Vec::new();
    for i in 1..=m {
        let ch = f.chi(i);
        v.push(entry("chi.1", "(q-1) χ_i = r_ii - 1", vec![i], Check::Rel(ch.scale(&qm1()), r(i, i).minus(&P::one()))));
        for j in 1..=m {
            for kx in 1..=m {
                if (j < i && i < kx) || (j > i && i > kx) {
                    v.push(entry("chi.2", "χ_i r_jk - r_jk χ_i = 0 (j < i < k, j > i > k)", vec![i, j, kx], Check::Rel(comm(&ch, &r(j, kx)), P::zero())));
                }
                let d = delta(j, kx);
                if j < i && kx < i {
                    v.push(
                        entry("chi.8", "χ_i r_jk - r_jk χ_i = -(q-1)^2(1+q^-1)^3 r_ii r_ik (j, k < i)", vec![i, j, kx], Check::Rel(comm(&ch, &r(j, kx)), mul(&r(i, i), &r(i, kx)).scale(&qc(2, 3).neg_ref())))
                            .or("right side -(q-1)^(1+δjk)(1+q^-1)^(2+δjk) r_ji r_ik", Check::Rel(comm(&ch, &r(j, kx)), mul(&r(j, i), &r(i, kx)).scale(&qc(1 + d, 2 + d).neg_ref()))),
                    );
                }
                if j > i && kx > i {
                    v.push(
                        entry("chi.9", "χ_i r_jk - r_jk χ_i = +(q-1)^2(1+q^-1)^3 r_ii r_ik (j, k > i)", vec![i, j, kx], Check::Rel(comm(&ch, &r(j, kx)), mul(&r(i, i), &r(i, kx)).scale(&qc(2, 3))))
                            .or("right side +(q-1)^(1+δjk)(1+q^-1)^(2+δjk) r_ik r_ji", Check::Rel(comm(&ch, &r(j, kx)), mul(&r(i, kx), &r(j, i)).scale(&qc(1 + d, 2 + d)))),
                    );
                }
            }
            if j < i {
                v.push(entry("chi.3", "χ_i r_ji - r_ji χ_i = -r_ii r_ji (j < i)", vec![i, j], Check::Rel(comm(&ch, &r(j, i)), mul(&r(i, i), &r(j, i)).negated())));
                v.push(entry("chi.6", "χ_i r_ik - r_ik χ_i = -r_ii r_ik (k < i)", vec![i, j], Check::Rel(comm(&ch, &r(i, j)), mul(&r(i, i), &r(i, j)).negated())));
            }
            if j > i {
                v.push(
                    entry("chi.4", "χ_i r_ji - r_ji χ_i = +r_ii r_ji (j > i)", vec![i, j], Check::Rel(comm(&ch, &r(j, i)), mul(&r(i, i), &r(j, i))))
                        .or("right side in the order r_ji r_ii", Check::Rel(comm(&ch, &r(j, i)), mul(&r(j, i), &r(i, i)))),
                );
                v.push(
                    entry("chi.7", "χ_i r_ik - r_ik χ_i = +r_ii r_ik (k > i)", vec![i, j], Check::Rel(comm(&ch, &r(i, j)), mul(&r(i, i), &r(i, j))))
                        .or("right side in the order r_ik r_ii", Check::Rel(comm(&ch, &r(i, j)), mul(&r(i, j), &r(i, i)))),
                );
            }
            if i <= j {
                let rhs = if i == j { P::zero() } else { mul(&r(i, j), &r(j, i)).scale(&qc(1, 3)) };
                v.push(entry("chi.10", "χ_i χ_j - χ_j χ_i = (1-δij)(q-1)(1+q^-1)^3 r_ij r_ji (i ≤ j)", vec![i, j], Check::Rel(comm(&ch, &f.chi(j)), rhs)));
            }
        }
        v.push(entry("chi.5", "χ_i r_ii - r_ii χ_i = 0", vec![i], Check::Rel(comm(&ch, &r(i, i)), P::zero())));
    }
    if f.group() == Group::SL {
        let all: Vec<usize> = (1..=m).collect();
        let lhs = (1..=m).fold(P::zero(), |acc, i| acc.plus(&mul(&f.diag_prefix(i - 1), &f.chi(i))));
        let s = perm_sum(f, &all);
        v.push(
            entry("chi.11", "Σ_i r_11 ... r_{i-1,i-1} χ_i = Σ_{σ≠1} (-q)^l(σ) (q-1)^(e(σ)-1) (1+q^-1)^e(σ) r_1σ(1) ... r_{n+1,σ(n+1)}", vec![], Check::Rel(lhs.clone(), s.clone()))
                .or("right side with a minus sign", Check::Rel(lhs, s.negated())),
        );
    }
    v
}

/// The printed Hopf formulas shared by the three forms plus those of `form`.
fn hopf_entries(f: &IntForm, form: Form) -> Vec<Entry> {
    let n = f.n();
    let m = n + 1;
    let r = |i, j| f.r(i, j);
    let o = |a: &P, b: &P| Tensor::outer(a, b);
    let sl = f.group() == Group::SL;
    let mut v = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            if i != j {
                let mut t = o(&r(i, i), &r(i, j)).plus(&o(&r(i, j), &r(j, j)));
                for kx in (1..=m).filter(|&kx| kx != i && kx != j) {
                    t.add_scaled(&o(&r(i, kx), &r(kx, j)), &qc(1, 1));
                }
                v.push(entry("r.delta", "Δ(r_ij) = r_ii ⊗ r_ij + r_ij ⊗ r_jj + (q-1)(1+q^-1) Σ_{k≠i,j} r_ik ⊗ r_kj (i ≠ j)", vec![i, j], Check::Co(r(i, j), t)));
            }
            v.push(entry("r.counit", "ε(r_ij) = δij", vec![i, j], Check::Counit(r(i, j), k(delta(i, j)))));
            if sl {
                let rows: Vec<usize> = (1..=m).filter(|&h| h != j).collect();
                let cols: Vec<usize> = (1..=m).filter(|&kx| kx != i).collect();
                let positional = |sign: i64| {
                    let kk = rows.len();
                    let mut d = P::zero();
                    for perm in (0..kk).permutations(kk) {
                        let e = (0..kk).filter(|&t| perm[t] != t).count() as i64;
                        let fs: Vec<P> = (0..kk).map(|t| r(rows[t], cols[perm[t]])).collect();
                        d.add_scaled(&prod(&fs), &mq(inversions(&perm) as i64).mul_ref(&rpow(&qq(), e)));
                    }
                    d.scale(&mq(sign * (j as i64 - i as i64)))
                };
                v.push(
                    entry("r.antipode", "S(r_ij) = (-q)^(j-i) d̃et_q((r_hk)_{h≠j, k≠i})", vec![i, j], Check::Anti(r(i, j), positional(1)))
                        .or("(-q)^(i-j)", Check::Anti(r(i, j), positional(-1)))
                        .or("(-q)^(i-j) (q-q^-1)^(δij-1) with the (q-q^-1) power counting off-diagonal entries", Check::Anti(r(i, j), f.antipode_r(i, j))),
                );
            }
        }
        let mut t = o(&r(i, i), &r(i, i));
        for kx in (1..=m).filter(|&kx| kx != i) {
            t.add_scaled(&o(&r(i, kx), &r(kx, i)), &qc(2, 2));
        }
        v.push(entry("r.delta_diag", "Δ(r_ii) = r_ii ⊗ r_ii + (q-1)^2(1+q^-1)^2 Σ_{k≠i} r_ik ⊗ r_kj", vec![i], Check::Unwritable("free index j in the second factor")).or("r_kj read as r_ki", Check::Co(r(i, i), t)));
    }
    match form {
        Form::Q => {
            for i in 1..=n {
                let ph = f.phi(i);
                let mut t = o(&r(i, i), &ph).plus(&o(&ph, &r(i + 1, i + 1)));
                for kx in (1..=m).filter(|&kx| kx != i) {
                    t.add_scaled(&o(&r(i, kx), &r(kx, i)), &qc(1, 2));
                }
                for kx in (1..=m).filter(|&kx| kx != i + 1) {
                    t.add_scaled(&o(&r(i + 1, kx), &r(kx, i + 1)), &qc(1, 2).neg_ref());
                }
                v.push(entry("phi.delta", "Δ(φ_i) = r_ii ⊗ φ_i + φ_i ⊗ r_{i+1,i+1} + (q-1)(1+q^-1)^2 (Σ_{k≠i} r_ik ⊗ r_ki - Σ_{k≠i+1} r_{i+1,k} ⊗ r_{k,i+1})", vec![i], Check::Co(ph.clone(), t)));
                v.push(entry("phi.counit", "ε(φ_i) = 0", vec![i], Check::Counit(ph.clone(), RatFunc::zero())));
                if sl {
                    let lead = prod(&[diag_range(f, 1, i - 1), ph.clone(), diag_range(f, i + 2, m)]).negated();
                    let a: Vec<usize> = (1..=m).filter(|&j| j != i + 1).collect();
                    let b: Vec<usize> = (1..=m).filter(|&j| j != i).collect();
                    let sum = perm_sum(f, &a).minus(&perm_sum(f, &b));
                    v.push(
                        entry("phi.antipode", "S(φ_i) = -r_11..r_{i-1,i-1} φ_i r_{i+2,i+2}..r_{n+1,n+1} + Σ_{σ≠1} (-q)^l (q-1)^(e-1) (1+q^-1)^e (Π_{j≠i+1} r_jσ(j) - Π_{j≠i} r_jσ(j))", vec![i], Check::Anti(ph.clone(), lead.plus(&sum)))
                            .or("sum with the opposite sign", Check::Anti(ph, lead.minus(&sum))),
                    );
                }
            }
        }
        Form::P => {
            for i in 1..=m {
                let ps = f.psi(i);
                let mut t = o(&ps, &f.diag_prefix(i)).plus(&o(&P::one(), &ps));
                for s in (0..i).map(|_| 1..=m).multi_cartesian_product() {
                    let nn = (0..i).filter(|&t| s[t] != t + 1).count() as i64;
                    if nn == 0 {
                        continue;
                    }
                    let a = prod(&(0..i).map(|t| r(t + 1, s[t])).collect::<Vec<_>>());
                    let b = prod(&(0..i).map(|t| r(s[t], t + 1)).collect::<Vec<_>>());
                    t.add_scaled(&o(&a, &b), &qi1().mul_ref(&rpow(&qq(), 2 * nn - 1)));
                }
                v.push(entry("psi.delta", "Δ(ψ_i) = (1+q^-1) Σ_{s≠id} (q-q^-1)^(2N(s)-1) Π_k r_{k,s(k)} ⊗ r_{s(k),k} + ψ_i ⊗ r_11..r_ii + 1 ⊗ ψ_i", vec![i], Check::Co(ps.clone(), t)));
                v.push(entry("psi.counit", "ε(ψ_i) = 0", vec![i], Check::Counit(ps.clone(), RatFunc::zero())));
                if sl {
                    v.push(entry("psi.antipode", "S(ψ_i) = -ψ_i + O(q-1)", vec![i], Check::AntiModQm1(ps.clone(), ps.negated())));
                }
            }
        }
        Form::Plain => {
            for i in 1..=m {
                let ch = f.chi(i);
                let mut t = o(&r(i, i), &ch);
                for kx in (1..=m).filter(|&kx| kx != i) {
                    t.add_scaled(&o(&r(i, kx), &r(kx, i)), &qc(1, 2));
                }
                v.push(entry("chi.delta", "Δ(χ_i) = r_ii ⊗ χ_i + (q-1)(1+q^-1)^2 Σ_{k≠i} r_ik ⊗ r_ki", vec![i], Check::Co(ch.clone(), t.clone())).or("adds χ_i ⊗ 1", Check::Co(ch.clone(), t.plus(&o(&ch, &P::one())))));
                v.push(entry("chi.counit", "ε(χ_i) = 0", vec![i], Check::Counit(ch.clone(), RatFunc::zero())));
                if sl {
                    let all: Vec<usize> = (1..=m).collect();
                    let minor: Vec<usize> = (1..=m).filter(|&j| j != i).collect();
                    let sums = perm_sum(f, &minor).minus(&perm_sum(f, &all));
                    let printed = prod(&[diag_range(f, 1, i - 1), ch.clone(), diag_range(f, i + 2, m)]).negated();
                    let fixed = prod(&[diag_range(f, 1, i - 1), ch.clone(), diag_range(f, i + 1, m)]).negated();
                    v.push(
                        entry("chi.antipode", "S(χ_i) = -r_11..r_{i-1,i-1} χ_i r_{i+2,i+2}..r_{n+1,n+1} + Σ_{σ≠1 on j≠i} (...) Π r_jσ(j) - Σ_{σ≠1} (...) Π r_jσ(j)", vec![i], Check::Anti(ch.clone(), printed.plus(&sums)))
                            .or("tail product starts at r_{i+1,i+1}", Check::Anti(ch, fixed.plus(&sums))),
                    );
                }
            }
        }
    }
    v
}

pub fn verify_relation_catalog(f: &IntForm, form: Form) -> Result<Catalog> {
    let mut entries = common_relations(f);
    entries.extend(match form {
        Form::Q => phi_relations(f),
        Form::P => psi_relations(f),
        Form::Plain => chi_relations(f),
    });
    let records = entries.into_iter().map(|e| run(f, e)).collect::<Result<Vec<_>>>()?;
    Ok(Catalog {
        form,
        group: f.group(),
        n: f.n(),
        records,
    })
}

pub fn verify_hopf_catalog(f: &IntForm, form: Form) -> Result<Catalog> {
    let records = hopf_entries(f, form).into_iter().map(|e| run(f, e)).collect::<Result<Vec<_>>>()?;
    Ok(Catalog {
        form,
        group: f.group(),
        n: f.n(),
        records,
    })
}
