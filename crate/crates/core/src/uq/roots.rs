//! q-brackets, the iterated root vectors, Lusztig's braid operators and the
//! convex order of the positive roots coming from a reduced word of w0.

use super::{qp, UqAlgebra, P};
use crate::coeffring::RatFunc;
use crate::error::{Error, Result};
use crate::ncalg::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    E,
    F,
}

impl Side {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "E" | "e" => Some(Self::E),
            "F" | "f" => Some(Self::F),
            _ => None,
        }
    }
}

/// [x, y]_{q^p} = xy - q^p yx.
pub fn q_bracket(uq: &UqAlgebra, x: &P, y: &P, p: i64) -> Result<P> {
    let xy = uq.mul(x, y)?;
    let yx = uq.mul(y, x)?;
    Ok(xy.minus(&yx.scale(&qp(p))))
}

/// E_{ij} (side E) or F_{ji} (side F) for i < j, by the recursion
/// E_{ij} = -[E_{i,j-1}, E_{j-1,j}]_{q^-1}, F_{ji} = q [F_{j-1,i}, F_{j,j-1}]_{q^-1}.
pub fn root_vector_iterated(uq: &UqAlgebra, i: usize, j: usize, side: Side) -> Result<P> {
    let n = uq.n();
    if !(1 <= i && i < j && j <= n + 1) {
        return Err(Error::BadIndexLists(format!("root ({i},{j}) for n = {n}")));
    }
    if j == i + 1 {
        return Ok(match side {
            Side::E => uq.e(i),
            Side::F => uq.f(i),
        });
    }
    let head = root_vector_iterated(uq, i, j - 1, side)?;
    let simple = root_vector_iterated(uq, j - 1, j, side)?;
    Ok(match side {
        Side::E => q_bracket(uq, &head, &simple, -1)?.negated(),
        Side::F => q_bracket(uq, &head, &simple, -1)?.scale(&qp(1)),
    })
}

/// Generators of the sl part: F_i, K_i^{±1}, E_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlLetter {
    F(usize),
    K(usize, i64),
    E(usize),
}

impl SlLetter {
    pub fn to_poly(self, uq: &UqAlgebra) -> P {
        match self {
            Self::F(i) => uq.f(i),
            Self::K(i, s) => uq.k(i, s),
            Self::E(i) => uq.e(i),
        }
    }
}

/// T_i on one sl generator.
pub fn braid_image(uq: &UqAlgebra, i: usize, g: SlLetter) -> Result<P> {
    let m1 = RatFunc::from_int(-1);
    let j = match g {
        SlLetter::F(j) | SlLetter::K(j, _) | SlLetter::E(j) => j,
    };
    if j == i {
        return Ok(match g {
            SlLetter::F(_) => uq.mul(&uq.k(i, -1), &uq.e(i))?.scale(&m1),
            SlLetter::K(_, s) => uq.k(i, -s),
            SlLetter::E(_) => uq.mul(&uq.f(i), &uq.k(i, 1))?.scale(&m1),
        });
    }
    if i.abs_diff(j) > 1 {
        return Ok(g.to_poly(uq));
    }
    Ok(match g {
        SlLetter::F(_) => {
            let a = uq.mul(&uq.f(j), &uq.f(i))?.scale(&m1);
            a.plus(&uq.mul(&uq.f(i), &uq.f(j))?.scale(&qp(1)))
        }
        SlLetter::K(_, s) => uq.mul(&uq.k(i, s), &uq.k(j, s))?,
        SlLetter::E(_) => {
            let a = uq.mul(&uq.e(i), &uq.e(j))?.scale(&m1);
            a.plus(&uq.mul(&uq.e(j), &uq.e(i))?.scale(&qp(-1)))
        }
    })
}

/// Converts torus exponents (a_1..a_{n+1}) into K exponents c_j = a_1 + ... + a_j.
fn k_exponents(a: &[i64]) -> Option<Vec<i64>> {
    if a.iter().sum::<i64>() != 0 {
        return None;
    }
    let mut c = Vec::with_capacity(a.len() - 1);
    let mut acc = 0;
    for x in &a[..a.len() - 1] {
        acc += x;
        c.push(acc);
    }
    Some(c)
}

/// T_i applied to an element of the sl part, given in normal form.
pub fn braid_t(uq: &UqAlgebra, i: usize, a: &P) -> Result<P> {
    let n = uq.n();
    if !(1..=n).contains(&i) {
        return Err(Error::BadIndexLists(format!("T_{i} for n = {n}")));
    }
    let a = uq.triangular_nf(a)?;
    let mut out = Poly::zero();
    for (w, c) in a.iter() {
        let (fw, tor, ew) = uq.split_word(w);
        let kc = k_exponents(&tor).ok_or_else(|| Error::NotInSlForm(uq.spec().fmt_word(w)))?;
        // T_i(K^c): K_i -> K_i^-1, K_{i±1} -> K_i K_{i±1}
        let mut kc2 = kc.clone();
        kc2[i - 1] = -kc[i - 1];
        for j in [i.wrapping_sub(1), i + 1] {
            if (1..=n).contains(&j) {
                kc2[i - 1] += kc[j - 1];
            }
        }
        let mut g = vec![0i64; n + 1];
        for j in 0..=n {
            let hi = if j < n { kc2[j] } else { 0 };
            let lo = if j > 0 { kc2[j - 1] } else { 0 };
            g[j] = hi - lo;
        }
        let mut factors = Vec::with_capacity(w.len());
        for l in &fw.0 {
            factors.push(braid_image(uq, i, SlLetter::F(uq.index_of(*l)))?);
        }
        factors.push(uq.g_monomial(&g));
        for l in &ew.0 {
            factors.push(braid_image(uq, i, SlLetter::E(uq.index_of(*l)))?);
        }
        out.add_scaled(&uq.mul_all(&factors)?, c);
    }
    Ok(out)
}

/// Positive roots ordered by the reduced word
/// (s_1 ... s_n)(s_1 ... s_{n-1}) ... (s_1) of the longest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexOrder {
    pub n: usize,
    pub reduced_word: Vec<usize>,
    pub roots: Vec<(usize, usize)>,
}

fn reflect(i: usize, x: usize) -> usize {
    if x == i {
        i + 1
    } else if x == i + 1 {
        i
    } else {
        x
    }
}

pub fn convex_order(n: usize) -> ConvexOrder {
    let mut word = Vec::new();
    for b in (1..=n).rev() {
        word.extend(1..=b);
    }
    let roots = word
        .iter()
        .enumerate()
        .map(|(k, &ik)| {
            let (mut a, mut b) = (ik, ik + 1);
            for &s in word[..k].iter().rev() {
                a = reflect(s, a);
                b = reflect(s, b);
            }
            (a, b)
        })
        .collect();
    ConvexOrder {
        n,
        reduced_word: word,
        roots,
    }
}

impl ConvexOrder {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// 1-based position k with α^k = α(i,j).
    pub fn position(&self, i: usize, j: usize) -> Option<usize> {
        self.roots.iter().position(|r| *r == (i, j)).map(|k| k + 1)
    }

    /// Closed form of the position: (j - i) + Σ_{h=0}^{i-2} (n - h).
    pub fn n_index(&self, i: usize, j: usize) -> usize {
        (j - i) + (0..i.saturating_sub(1)).map(|h| self.n - h).sum::<usize>()
    }

    /// The closed form as printed, i - j + Σ_{h=0}^{i-1} (n - h); kept for
    /// the errata report.
    pub fn n_index_printed(&self, i: usize, j: usize) -> i64 {
        i as i64 - j as i64 + (0..i).map(|h| self.n as i64 - h as i64).sum::<i64>()
    }

    /// Reduced: every α^k is a positive root and they are pairwise distinct.
    pub fn is_reduced(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.roots.iter().all(|&(a, b)| a < b && seen.insert((a, b)))
    }

    /// The word multiplies out to i -> n+2-i and has length (n+1 choose 2).
    pub fn is_longest(&self) -> bool {
        let m = self.n + 1;
        let mut perm: Vec<usize> = (1..=m).collect();
        for &s in &self.reduced_word {
            perm.swap(s - 1, s);
        }
        self.reduced_word.len() == m * (m - 1) / 2 && perm.iter().enumerate().all(|(k, &v)| v == m - k)
    }

    /// α ⪯ β with α + β a root forces α ⪯ α+β ⪯ β. Brute force over pairs.
    pub fn is_convex(&self) -> bool {
        for (x, &(a, b)) in self.roots.iter().enumerate() {
            for (y, &(c, d)) in self.roots.iter().enumerate().skip(x + 1) {
                let sum = if b == c {
                    Some((a, d))
                } else if d == a {
                    Some((c, b))
                } else {
                    None
                };
                if let Some(s) = sum {
                    let z = self.position(s.0, s.1).unwrap() - 1;
                    if !(x < z && z < y) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// E_{α^k} = T_{i_1} ... T_{i_{k-1}}(E_{i_k}) (likewise with F), k 1-based.
pub fn root_vector_lusztig(uq: &UqAlgebra, co: &ConvexOrder, k: usize, side: Side) -> Result<P> {
    if !(1..=co.len()).contains(&k) || co.n != uq.n() {
        return Err(Error::BadIndexLists(format!("root index {k} of {}", co.len())));
    }
    let ik = co.reduced_word[k - 1];
    let mut x = match side {
        Side::E => uq.e(ik),
        Side::F => uq.f(ik),
    };
    for &s in co.reduced_word[..k - 1].iter().rev() {
        x = braid_t(uq, s, &x)?;
    }
    Ok(x)
}

/// The word of a relation among sl generators, evaluated after applying T_i
/// letterwise; used to check that T_i respects the defining relations.
pub fn braid_on_words(uq: &UqAlgebra, i: usize, terms: &[(Vec<SlLetter>, RatFunc)]) -> Result<P> {
    let mut out = Poly::zero();
    for (w, c) in terms {
        let factors = w.iter().map(|g| braid_image(uq, i, *g)).collect::<Result<Vec<_>>>()?;
        out.add_scaled(&uq.mul_all(&factors)?, c);
    }
    Ok(out)
}
