//! Recursive-descent parser for the expression language:
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*"? factor)*
//! factor := atom ("^" ["-"] int)?
//! atom   := number | "q" | gen | call | "detq" | "detqt" | "(" expr ")"
//! ```
//!
//! Juxtaposition is multiplication and binds like `*`; products are read
//! left to right. A number is `123` or `123/45`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::expr::{Expr, Func, Gen};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    M,
    SL,
    GL,
    BPlus,
    BMinus,
    Uq,
    Uh,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::M => "M",
            Self::SL => "SL",
            Self::GL => "GL",
            Self::BPlus => "B+",
            Self::BMinus => "B-",
            Self::Uq => "Uq",
            Self::Uh => "Uh",
        }
    }

    pub fn all() -> [Self; 7] {
        [Self::M, Self::SL, Self::GL, Self::BPlus, Self::BMinus, Self::Uq, Self::Uh]
    }
}

impl FromStr for AlgebraKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::all()
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown algebra {s:?} (expected one of M, SL, GL, B+, B-, Uq, Uh)"))
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What the parser needs to know to check generator indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    pub n: usize,
    pub algebra: AlgebraKind,
}

impl Context {
    pub fn new(n: usize, algebra: AlgebraKind) -> Self {
        Self { n, algebra }
    }

    /// None when the generator is valid here, otherwise the reason.
    pub fn check(&self, g: &Gen) -> Option<String> {
        use AlgebraKind::*;
        let (n, m) = (self.n, self.n + 1);
        let a = self.algebra;
        let r = |i: usize| (1..=m).contains(&i);
        let s = |i: usize| (1..=n).contains(&i);
        let (family_ok, idx_ok) = match *g {
            Gen::X(i, j) => (
                matches!(a, M | SL | GL | BPlus | BMinus),
                r(i) && r(j) && !(a == BPlus && i > j) && !(a == BMinus && i < j),
            ),
            Gen::R(i, j) => (matches!(a, SL | GL), r(i) && r(j)),
            Gen::Phi(i) => (matches!(a, SL | GL), s(i)),
            Gen::Psi(i) | Gen::Chi(i) => (matches!(a, SL | GL), r(i)),
            Gen::F(i) | Gen::E(i) => (a == Uq, s(i)),
            Gen::G(i) | Gen::Ginv(i) => (a == Uq, r(i)),
            Gen::Lf(j, i) => (a == Uh, r(i) && r(j) && j > i),
            Gen::Le(i, j) => (a == Uh, r(i) && r(j) && i < j),
            Gen::Lh(i) => (a == Uh, s(i)),
            Gen::C => (a == Uh, true),
        };
        if !family_ok {
            Some(format!("{g} is not a generator of {a}"))
        } else if !idx_ok {
            Some(format!("{g} is out of range for {a} with n = {n}"))
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("index error at {line}:{col}: {msg}")]
    Index { line: usize, col: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut out = Vec::new();
    let mut k = 0;
    let bump = |c: char, line: &mut usize, col: &mut usize| {
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        if c.is_whitespace() {
            bump(c, &mut line, &mut col);
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let a: String = chars[start..k].iter().collect();
            let mut tok = Tok::Int(a.parse().unwrap());
            if k + 1 < chars.len() && chars[k] == '/' && chars[k + 1].is_ascii_digit() {
                k += 1;
                let s2 = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let b: BigInt = chars[s2..k].iter().collect::<String>().parse().unwrap();
                if b == BigInt::from(0) {
                    return Err(ParseError::Syntax { line: l0, col: c0, msg: "zero denominator".into() });
                }
                tok = Tok::Num(BigRational::new(a.parse().unwrap(), b));
            }
            for &ch in &chars[start..k] {
                bump(ch, &mut line, &mut col);
            }
            out.push(Spanned { tok, line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            for &ch in &chars[start..k] {
                bump(ch, &mut line, &mut col);
            }
            out.push(Spanned { tok: Tok::Ident(chars[start..k].iter().collect()), line: l0, col: c0 });
            continue;
        }
        if "+-*^()[],".contains(c) {
            bump(c, &mut line, &mut col);
            k += 1;
            out.push(Spanned { tok: Tok::Sym(c), line: l0, col: c0 });
            continue;
        }
        return Err(ParseError::Syntax { line: l0, col: c0, msg: format!("unexpected character {c:?}") });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ctx: &'a Context,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, at: &Spanned, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { line: at.line, col: at.col, msg: msg.into() })
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.err(&t, format!("expected {c:?}, found {}", describe(&t.tok)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = if self.is_sym('-') {
            self.next();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.is_sym('+') {
                self.next();
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.next();
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek().tok, Tok::Num(_) | Tok::Int(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.factor()?;
        loop {
            if self.is_sym('*') {
                self.next();
            } else if !self.starts_atom() {
                return Ok(e);
            }
            e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let a = self.atom()?;
        if !self.is_sym('^') {
            return Ok(a);
        }
        self.next();
        let neg = self.is_sym('-');
        if neg {
            self.next();
        }
        let t = self.next();
        let Tok::Int(k) = &t.tok else {
            return self.err(&t, format!("expected an integer exponent, found {}", describe(&t.tok)));
        };
        let k: i64 = match i64::try_from(k.clone()) {
            Ok(k) if k <= 1 << 20 => k,
            _ => return self.err(&t, "exponent too large"),
        };
        Ok(Expr::Pow(Box::new(a), if neg { -k } else { k }))
    }

    fn index_list(&mut self) -> Result<Vec<usize>, ParseError> {
        self.expect('[')?;
        let mut out = Vec::new();
        loop {
            let t = self.next();
            match &t.tok {
                Tok::Int(k) => match usize::try_from(k.clone()) {
                    Ok(k) => out.push(k),
                    Err(_) => return self.err(&t, "index too large"),
                },
                other => return self.err(&t, format!("expected an index, found {}", describe(other))),
            }
            if self.is_sym(',') {
                self.next();
                continue;
            }
            self.expect(']')?;
            return Ok(out);
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(k) => Ok(Expr::Num(BigRational::from_integer(k.clone()))),
            Tok::Num(r) => Ok(Expr::Num(r.clone())),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.named(name, &t),
            other => self.err(&t, format!("unexpected {}", describe(other))),
        }
    }

    fn named(&mut self, name: &str, at: &Spanned) -> Result<Expr, ParseError> {
        match name {
            "q" => return Ok(Expr::Q),
            "c" => return self.generator(Gen::C, at),
            "detq" | "detqt" => {
                // "detq()" is allowed; "detq (a)" is a product
                let empty_call = self.is_sym('(') && self.toks.get(self.pos + 1).is_some_and(|t| t.tok == Tok::Sym(')'));
                if empty_call {
                    self.next();
                    self.next();
                }
                return Ok(if name == "detq" { Expr::DetQ } else { Expr::DetQt });
            }
            _ => {}
        }
        if let Some(func) = Func::from_name(name) {
            self.expect('(')?;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(Expr::Call(func, Box::new(e)));
        }
        let arity = match name {
            "x" | "r" | "f" | "e" => 2,
            "phi" | "psi" | "chi" | "F" | "G" | "Ginv" | "E" | "h" => 1,
            _ => return self.err(at, format!("unknown name {name:?}")),
        };
        let idx = self.index_list()?;
        if idx.len() != arity {
            return self.err(at, format!("{name} takes {arity} index(es), got {}", idx.len()));
        }
        let g = match (name, idx.as_slice()) {
            ("x", &[i, j]) => Gen::X(i, j),
            ("r", &[i, j]) => Gen::R(i, j),
            ("f", &[j, i]) => Gen::Lf(j, i),
            ("e", &[i, j]) => Gen::Le(i, j),
            ("phi", &[i]) => Gen::Phi(i),
            ("psi", &[i]) => Gen::Psi(i),
            ("chi", &[i]) => Gen::Chi(i),
            ("F", &[i]) => Gen::F(i),
            ("G", &[i]) => Gen::G(i),
            ("Ginv", &[i]) => Gen::Ginv(i),
            ("E", &[i]) => Gen::E(i),
            ("h", &[i]) => Gen::Lh(i),
            _ => unreachable!(),
        };
        self.generator(g, at)
    }

    fn generator(&self, g: Gen, at: &Spanned) -> Result<Expr, ParseError> {
        match self.ctx.check(&g) {
            None => Ok(Expr::Gen(g)),
            Some(msg) => Err(ParseError::Index { line: at.line, col: at.col, msg }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(r) => format!("number {r}"),
        Tok::Int(k) => format!("number {k}"),
        Tok::Ident(s) => format!("{s:?}"),
        Tok::Sym(c) => format!("{c:?}"),
        Tok::End => "end of input".into(),
    }
}

pub fn parse(src: &str, ctx: &Context) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, ctx };
    if p.peek().tok == Tok::End {
        return p.err(&p.peek().clone(), "empty expression");
    }
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, format!("unexpected {}", describe(&t.tok)));
    }
    Ok(e)
}
