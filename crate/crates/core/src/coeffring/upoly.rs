//! Dense integer polynomials in q (ascending coefficients), used only for
//! gcd and exact division inside `RatFunc` canonicalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Dense = Vec<BigInt>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree(p: &Dense) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn content(p: &Dense) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub(crate) fn primitive(p: &Dense) -> Dense {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Dense = p.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn prem(a: &Dense, b: &Dense) -> Dense {
    let db = degree(b).expect("prem by zero");
    let lb = b[db].clone();
    let mut r = a.clone();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd in Z[q], positive leading coefficient.
pub(crate) fn gcd(a: &Dense, b: &Dense) -> Dense {
    let mut x = primitive(a);
    let mut y = primitive(b);
    if x.is_empty() {
        return y;
    }
    if y.is_empty() {
        return x;
    }
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let r = prem(&x, &y);
        if r.is_empty() {
            return primitive(&y);
        }
        x = y;
        y = primitive(&r);
    }
}

/// Exact quotient a / b in Z[q], or None if b does not divide a.
pub(crate) fn div_exact(a: &Dense, b: &Dense) -> Option<Dense> {
    let db = degree(b)?;
    let mut r = a.clone();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    let mut quot = vec![BigInt::zero(); da - db + 1];
    let lb = &b[db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            return None;
        }
        let (qc, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] -= &qc * bc;
        }
        quot[shift] = qc;
        trim(&mut r);
    }
    Some(quot)
}
