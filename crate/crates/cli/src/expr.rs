use std::fmt;

use num_rational::BigRational;

/// A generator symbol with its indices, exactly as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gen {
    X(usize, usize),
    R(usize, usize),
    Phi(usize),
    Psi(usize),
    Chi(usize),
    F(usize),
    G(usize),
    Ginv(usize),
    E(usize),
    /// classical f[j,i]
    Lf(usize, usize),
    Lh(usize),
    /// classical e[i,j]
    Le(usize, usize),
    C,
}

impl Gen {
    pub fn is_integer_form(&self) -> bool {
        matches!(self, Gen::R(..) | Gen::Phi(_) | Gen::Psi(_) | Gen::Chi(_))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X(i, j) => write!(f, "x[{i},{j}]"),
            Gen::R(i, j) => write!(f, "r[{i},{j}]"),
            Gen::Phi(i) => write!(f, "phi[{i}]"),
            Gen::Psi(i) => write!(f, "psi[{i}]"),
            Gen::Chi(i) => write!(f, "chi[{i}]"),
            Gen::F(i) => write!(f, "F[{i}]"),
            Gen::G(i) => write!(f, "G[{i}]"),
            Gen::Ginv(i) => write!(f, "Ginv[{i}]"),
            Gen::E(i) => write!(f, "E[{i}]"),
            Gen::Lf(j, i) => write!(f, "f[{j},{i}]"),
            Gen::Lh(i) => write!(f, "h[{i}]"),
            Gen::Le(i, j) => write!(f, "e[{i},{j}]"),
            Gen::C => write!(f, "c"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    /// antipode
    S,
    Delta,
    Eps,
    /// Poisson cobracket
    Cobracket,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::S => "S",
            Func::Delta => "Delta",
            Func::Eps => "eps",
            Func::Cobracket => "delta",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "S" => Func::S,
            "Delta" => Func::Delta,
            "eps" => Func::Eps,
            "delta" => Func::Cobracket,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// nonnegative rational literal
    Num(BigRational),
    Q,
    Gen(Gen),
    DetQ,
    DetQt,
    Call(Func, Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    /// noncommutative, left to right
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn gens(&self) -> Vec<&Gen> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Gen(g) = e {
                out.push(g);
            }
        });
        out
    }

    pub fn mentions(&self, pred: impl Fn(&Expr) -> bool) -> bool {
        let mut hit = false;
        self.walk(&mut |e| hit |= pred(e));
        hit
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Call(_, a) | Expr::Neg(a) | Expr::Pow(a, _) => a.walk(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            _ => {}
        }
    }

    fn is_atom(&self) -> bool {
        matches!(self, Expr::Num(_) | Expr::Q | Expr::Gen(_) | Expr::DetQ | Expr::DetQt | Expr::Call(..))
    }
}

// Printing inserts exactly the parentheses the grammar needs, so that
// parse(to_string(e)) == e.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |e: &Expr, f: &mut fmt::Formatter<'_>| write!(f, "({e})");
        match self {
            Expr::Num(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Expr::Num(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Expr::Q => write!(f, "q"),
            Expr::Gen(g) => write!(f, "{g}"),
            Expr::DetQ => write!(f, "detq"),
            Expr::DetQt => write!(f, "detqt"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Neg(a) => {
                write!(f, "-")?;
                match **a {
                    Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => paren(a, f),
                    _ => write!(f, "{a}"),
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let op = if matches!(self, Expr::Add(..)) { "+" } else { "-" };
                write!(f, "{a} {op} ")?;
                match **b {
                    Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => paren(b, f),
                    _ => write!(f, "{b}"),
                }
            }
            Expr::Mul(a, b) => {
                match **a {
                    Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => paren(a, f)?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, "*")?;
                match **b {
                    Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) | Expr::Mul(..) => paren(b, f),
                    _ => write!(f, "{b}"),
                }
            }
            Expr::Pow(a, k) => {
                if a.is_atom() {
                    write!(f, "{a}")?;
                } else {
                    paren(a, f)?;
                }
                write!(f, "^{k}")
            }
        }
    }
}

pub fn num(k: i64) -> Expr {
    debug_assert!(k >= 0);
    Expr::Num(BigRational::from_integer(k.into()))
}
