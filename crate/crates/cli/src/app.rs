//! Argument parsing and command dispatch. `run` is the whole program minus
//! process plumbing, so tests can drive it directly.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qfun_core::intform::ToralChoice;
use qfun_core::ncalg::Poly;
use qfun_core::qmatrix::MatrixOrder;
use qfun_core::qsl::{SLAlgebra, SlStrategy};
use qfun_core::uq::{collapse_at_one, convex_order, root_vector_iterated, root_vector_lusztig, Side, ThetaMaps};
use qfun_core::LaurentPoly;
use serde_json::{json, Value as Json};

use crate::eval::{fmt_poly, fmt_tensor, EvalError, Session, Settings, DEFAULT_MAX_TERMS};
use crate::expr::{Expr, Func, Gen};
use crate::parser::{parse, AlgebraKind, Context, ParseError};
use crate::suites::{self, standing_errata, Suite, SuiteParams};

pub const SCHEMA: &str = "qfun/1";

#[derive(Parser, Debug)]
#[command(name = "qfun", version, about = "Exact computations in quantum function algebras and their integer forms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// rank: matrices are (n+1) x (n+1)
    #[arg(long, global = true, default_value_t = 1)]
    n: usize,
    #[arg(long, global = true, default_value = "M", value_parser = parse_algebra)]
    algebra: AlgebraKind,
    /// generator order for M and GL: lex, antidiag, triangular
    #[arg(long, global = true, default_value = "lex", value_parser = parse_order)]
    order: MatrixOrder,
    /// which det_q = 1 reduction SL uses: diagonal74 or antidiag73
    #[arg(long = "sl-strategy", global = true, default_value = "diagonal74", value_parser = parse_strategy)]
    sl_strategy: SlStrategy,
    /// text or json; verify defaults to json, everything else to text
    #[arg(long, global = true)]
    format: Option<Format>,
    #[arg(long = "max-degree", global = true, default_value_t = 4)]
    max_degree: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// image of the toral generators at q = 1 in GL: printed (chi[n+1] -> c) or trace
    #[arg(long, global = true, default_value = "printed")]
    toral: Toral,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Toral {
    Printed,
    Trace,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SideArg {
    E,
    F,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Braid,
    Iterated,
    Both,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// normal form of an expression
    Nf { #[arg(allow_hyphen_values = true)] expr: String },
    /// product of two expressions
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Coproduct { #[arg(allow_hyphen_values = true)] expr: String },
    Antipode { #[arg(allow_hyphen_values = true)] expr: String },
    Counit { #[arg(allow_hyphen_values = true)] expr: String },
    /// the quantum determinant
    Detq,
    /// basis monomials up to --max-degree
    Basis,
    /// run a verification suite: hopf, intform, pbw, thm53, convex, mu, cobracket or all
    Verify { suite: String },
    /// quantum root vector for the positive root (i, j), i < j
    Rootvec {
        /// the root as i,j
        #[arg(long, value_parser = parse_pair)]
        root: (usize, usize),
        #[arg(long, default_value = "both")]
        method: Method,
        #[arg(long, default_value = "e")]
        side: SideArg,
    },
    /// the map mu_P of an SL element
    Mu {
        #[arg(required_unless_present = "gen", conflicts_with = "gen", allow_hyphen_values = true)]
        expr: Option<String>,
        /// a single generator, as r:i,j or x:i,j
        #[arg(long)]
        gen: Option<String>,
        /// also print the torus-collapsed value at q = 1
        #[arg(long)]
        collapse: bool,
    },
    /// Poisson cobracket at q = 1 (integer-form expression in SL/GL, or a U(h) element)
    Cobracket { #[arg(allow_hyphen_values = true)] expr: String },
    /// image at q = 1 of an integer-form expression
    Specialize { #[arg(allow_hyphen_values = true)] expr: String },
}

fn parse_algebra(s: &str) -> Result<AlgebraKind, String> {
    s.parse()
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected i,j, got {s:?}"))?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad index {t:?}"));
    Ok((p(a)?, p(b)?))
}

fn parse_order(s: &str) -> Result<MatrixOrder, String> {
    MatrixOrder::parse(s).ok_or_else(|| format!("unknown order {s:?} (lex, antidiag, triangular)"))
}

fn parse_strategy(s: &str) -> Result<SlStrategy, String> {
    SlStrategy::parse(s).ok_or_else(|| format!("unknown strategy {s:?} (diagonal74, antidiag73)"))
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Self { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Debug, thiserror::Error)]
enum CmdError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Core(#[from] qfun_core::Error),
    #[error("{0}")]
    Usage(String),
}

fn max_terms() -> Result<usize, CmdError> {
    match std::env::var("QFUN_MAX_TERMS") {
        Ok(s) => s.trim().parse().map_err(|_| CmdError::Usage(format!("QFUN_MAX_TERMS must be a positive integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_MAX_TERMS),
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output::ok(text)
            };
        }
    };
    if cli.global.n == 0 {
        return Output::usage("--n must be at least 1");
    }
    match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => Output::usage(e),
    }
}

fn settings(g: &Global, algebra: AlgebraKind) -> Result<Settings, CmdError> {
    Ok(Settings {
        n: g.n,
        algebra,
        order: g.order.clone(),
        strategy: g.sl_strategy,
        toral: match g.toral {
            Toral::Printed => ToralChoice::Printed,
            Toral::Trace => ToralChoice::Trace,
        },
        max_terms: max_terms()?,
    })
}

fn uses_c(e: &Expr) -> bool {
    e.mentions(|x| matches!(x, Expr::Gen(Gen::C)))
}

fn envelope(cli: &Cli, command: &str, algebra: AlgebraKind) -> serde_json::Map<String, Json> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), SCHEMA.into());
    m.insert("command".into(), command.into());
    m.insert("n".into(), cli.global.n.into());
    m.insert("algebra".into(), algebra.name().into());
    m.insert("errata".into(), Json::Array(standing_errata()));
    m
}

fn render(cli: &Cli, json_default: bool, text: String, doc: serde_json::Map<String, Json>) -> String {
    let fmt = cli.global.format.unwrap_or(if json_default { Format::Json } else { Format::Text });
    match fmt {
        Format::Text => text + "\n",
        Format::Json => serde_json::to_string_pretty(&Json::Object(doc)).expect("json") + "\n",
    }
}

fn dispatch(cli: &Cli) -> Result<Output, CmdError> {
    let g = &cli.global;
    let alg = g.algebra;
    let expr_cmd = |name: &str, srcs: &[&str], build: &dyn Fn(Vec<Expr>) -> Expr| -> Result<Output, CmdError> {
        let ctx = Context::new(g.n, alg);
        let parsed = srcs.iter().map(|s| parse(s, &ctx)).collect::<Result<Vec<_>, _>>()?;
        let central = parsed.iter().any(uses_c);
        let e = build(parsed);
        let session = Session::with_central(settings(g, alg)?, false, central)?;
        let v = session.eval(&e)?;
        let text = session.format(&v)?;
        let mut doc = envelope(cli, name, alg);
        doc.insert("input".into(), e.to_string().into());
        doc.insert("result".into(), json!({ "text": text, "value": session.to_json(&v)? }));
        Ok(Output::ok(render(cli, false, text, doc)))
    };
    let call = |f: Func| move |mut v: Vec<Expr>| Expr::Call(f, Box::new(v.remove(0)));
    let first = |mut v: Vec<Expr>| v.remove(0);
    match &cli.cmd {
        Cmd::Nf { expr } => expr_cmd("nf", &[expr], &first),
        Cmd::Mul { a, b } => expr_cmd("mul", &[a, b], &|mut v: Vec<Expr>| {
            let b = v.pop().unwrap();
            Expr::Mul(Box::new(v.pop().unwrap()), Box::new(b))
        }),
        Cmd::Coproduct { expr } => expr_cmd("coproduct", &[expr], &call(Func::Delta)),
        Cmd::Antipode { expr } => expr_cmd("antipode", &[expr], &call(Func::S)),
        Cmd::Counit { expr } => expr_cmd("counit", &[expr], &call(Func::Eps)),
        Cmd::Detq => expr_cmd("detq", &["detq"], &first),
        Cmd::Basis => basis(cli),
        Cmd::Verify { suite } => verify(cli, suite),
        Cmd::Rootvec { root: (i, j), method, side } => rootvec(cli, *i, *j, *method, *side),
        Cmd::Mu { expr, gen, collapse } => {
            let src = match (expr, gen) {
                (Some(e), _) => e.clone(),
                (None, Some(g)) => {
                    let (fam, ij) = g.split_once(':').ok_or_else(|| CmdError::Usage(format!("--gen wants r:i,j or x:i,j, got {g:?}")))?;
                    if fam != "r" && fam != "x" {
                        return Err(CmdError::Usage(format!("--gen family must be r or x, got {fam:?}")));
                    }
                    format!("{fam}[{ij}]")
                }
                (None, None) => unreachable!("clap requires one"),
            };
            mu(cli, &src, *collapse)
        }
        Cmd::Cobracket { expr } => classical(cli, "cobracket", expr),
        Cmd::Specialize { expr } => classical(cli, "specialize", expr),
    }
}

fn basis(cli: &Cli) -> Result<Output, CmdError> {
    let g = &cli.global;
    let session = Session::new(settings(g, g.algebra)?, false)?;
    let spec = session.spec()?;
    // the core enumerates the whole filtration piece of degree <= d; group it by length
    let all = match g.algebra {
        AlgebraKind::M => qfun_core::qmatrix::MatrixAlgebra::<LaurentPoly>::new(g.n, g.order.clone())?.pbw_basis(g.max_degree),
        AlgebraKind::SL => SLAlgebra::<LaurentPoly>::new(g.n, g.sl_strategy)?.pbw_basis_sl(g.max_degree),
        a => return Err(CmdError::Usage(format!("basis is implemented for M and SL, not {a}"))),
    };
    let mut text = Vec::new();
    let mut degrees = Vec::new();
    for d in 0..=g.max_degree {
        let shown: Vec<String> = all.iter().filter(|w| w.len() == d).map(|w| spec.fmt_word(w)).collect();
        text.push(format!("degree {d}: {} monomials", shown.len()));
        if d <= 2 {
            text.push(format!("  {}", shown.join(" ")));
        }
        degrees.push(json!({ "degree": d, "count": shown.len(), "words": shown }));
    }
    let mut doc = envelope(cli, "basis", g.algebra);
    doc.insert("result".into(), json!({ "degrees": degrees }));
    Ok(Output::ok(render(cli, false, text.join("\n"), doc)))
}

fn verify(cli: &Cli, suite: &str) -> Result<Output, CmdError> {
    let g = &cli.global;
    let suites = Suite::parse(suite).ok_or_else(|| {
        CmdError::Usage(format!("unknown suite {suite:?} (hopf, intform, pbw, thm53, convex, mu, cobracket, all)"))
    })?;
    let p = SuiteParams { n: g.n, seed: g.seed, max_degree: g.max_degree, strategy: g.sl_strategy, order: g.order.clone() };
    let out = suites::run(&suites, &p)?;
    let passed = out.checks.iter().filter(|c| c.pass).count();
    let failed = out.checks.len() - passed;
    let mut text: Vec<String> =
        out.checks.iter().map(|c| format!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.suite, c.name)).collect();
    text.extend(out.skipped.iter().map(|s| format!("SKIP {}: {} ({})", s["suite"].as_str().unwrap_or("?"), s["what"].as_str().unwrap_or("?"), s["reason"].as_str().unwrap_or("?"))));
    text.push(format!("{passed} passed, {failed} failed"));
    let mut errata = standing_errata();
    errata.extend(out.errata.iter().cloned());
    let mut doc = envelope(cli, "verify", g.algebra);
    doc.remove("algebra");
    doc.insert("suite".into(), suite.into());
    doc.insert("seed".into(), g.seed.into());
    doc.insert("checks".into(), out.checks.iter().map(|c| c.to_json()).collect());
    doc.insert("skipped".into(), Json::Array(out.skipped.clone()));
    doc.insert("summary".into(), json!({ "passed": passed, "failed": failed, "all_pass": failed == 0 }));
    doc.insert("errata".into(), Json::Array(errata));
    let stdout = render(cli, true, text.join("\n"), doc);
    Ok(Output { code: if failed == 0 { 0 } else { 1 }, stdout, stderr: String::new() })
}

fn rootvec(cli: &Cli, i: usize, j: usize, method: Method, side: SideArg) -> Result<Output, CmdError> {
    let n = cli.global.n;
    if !(1 <= i && i < j && j <= n + 1) {
        return Err(CmdError::Usage(format!("need 1 <= i < j <= {}, got ({i},{j})", n + 1)));
    }
    let session = Session::new(settings(&cli.global, AlgebraKind::Uq)?, false)?;
    let spec = session.spec()?;
    let uq = qfun_core::uq::UqAlgebra::new(n)?;
    let co = convex_order(n);
    let side = match side {
        SideArg::E => Side::E,
        SideArg::F => Side::F,
    };
    let k = co.n_index(i, j);
    let label = match side {
        Side::E => format!("E[{i},{j}]"),
        Side::F => format!("F[{j},{i}]"),
    };
    let it = match method {
        Method::Braid => None,
        _ => Some(root_vector_iterated(&uq, i, j, side)?),
    };
    let br = match method {
        Method::Iterated => None,
        _ => Some(root_vector_lusztig(&uq, &co, k, side)?),
    };
    let mut text = Vec::new();
    let mut res = serde_json::Map::new();
    res.insert("root".into(), json!([i, j]));
    res.insert("position".into(), k.into());
    if let Some(p) = &it {
        text.push(format!("{label} = {}", fmt_poly(&spec, p)));
        res.insert("iterated".into(), fmt_poly(&spec, p).into());
    }
    if let Some(p) = &br {
        text.push(format!("braid vector at position {k} = {}", fmt_poly(&spec, p)));
        res.insert("braid".into(), fmt_poly(&spec, p).into());
    }
    if let (Some(a), Some(b)) = (&it, &br) {
        text.push(format!("equal: {}", a == b));
        res.insert("equal".into(), (a == b).into());
    }
    let mut doc = envelope(cli, "rootvec", AlgebraKind::Uq);
    doc.insert("result".into(), Json::Object(res));
    Ok(Output::ok(render(cli, false, text.join("\n"), doc)))
}

fn mu(cli: &Cli, src: &str, collapse: bool) -> Result<Output, CmdError> {
    let g = &cli.global;
    let e = parse(src, &Context::new(g.n, AlgebraKind::SL))?;
    let session = Session::new(settings(g, AlgebraKind::SL)?, false)?;
    let p = match session.eval(&e)? {
        crate::eval::Value::Elem(p) => p,
        crate::eval::Value::Scalar(c) => Poly::scalar(c),
        _ => return Err(CmdError::Usage("mu takes an element of SL".into())),
    };
    let sl = SLAlgebra::<LaurentPoly>::new(g.n, g.sl_strategy)?;
    let maps = ThetaMaps::new(g.n)?;
    // mu_P is linear; apply it word by word so rational coefficients are fine
    let mut t = qfun_core::ncalg::Tensor::zero(2);
    for (w, c) in p.iter() {
        t.add_scaled(&maps.mu_p(&sl, &Poly::word(w.clone()))?, c);
    }
    let uq = maps.uq();
    let specs = [uq.spec().as_ref(), uq.spec().as_ref()];
    let tt = fmt_tensor(uq.spec(), &t);
    let mut text = vec![format!("mu_P = {tt}")];
    let mut res = serde_json::Map::new();
    res.insert("text".into(), tt.clone().into());
    res.insert("value".into(), t.to_json(&specs));
    if collapse {
        let c = collapse_at_one(uq, &t)?;
        text.push(format!("at q = 1: {}", c.fmt_with(uq)));
        res.insert("collapsed".into(), c.to_json(uq));
    }
    let mut doc = envelope(cli, "mu", AlgebraKind::SL);
    doc.insert("input".into(), e.to_string().into());
    doc.insert("result".into(), Json::Object(res));
    Ok(Output::ok(render(cli, false, text.join("\n"), doc)))
}

fn classical(cli: &Cli, name: &str, src: &str) -> Result<Output, CmdError> {
    let g = &cli.global;
    let alg = match g.algebra {
        AlgebraKind::GL => AlgebraKind::GL,
        AlgebraKind::Uh if name == "cobracket" => AlgebraKind::Uh,
        _ => AlgebraKind::SL,
    };
    let e = parse(src, &Context::new(g.n, alg))?;
    let formal = alg != AlgebraKind::Uh;
    let session = Session::with_central(settings(g, alg)?, formal, uses_c(&e))?;
    let v = session.eval(&e)?;
    let v = match name {
        "cobracket" => session.eval(&Expr::Call(Func::Cobracket, Box::new(e.clone())))?,
        _ => match v {
            crate::eval::Value::Elem(p) => {
                let sp = session.specializer().expect("formal session");
                crate::eval::Value::Cl(sp.specialize(session.form()?, &p)?)
            }
            crate::eval::Value::Scalar(c) => {
                let sp = session.specializer().expect("formal session");
                crate::eval::Value::Cl(sp.specialize(session.form()?, &Poly::scalar(c))?)
            }
            _ => return Err(CmdError::Usage("specialize takes an element of the integer form".into())),
        },
    };
    let text = session.format(&v)?;
    let mut doc = envelope(cli, name, alg);
    doc.insert("input".into(), e.to_string().into());
    doc.insert("result".into(), json!({ "text": text, "value": session.to_json(&v)? }));
    Ok(Output::ok(render(cli, false, text, doc)))
}
