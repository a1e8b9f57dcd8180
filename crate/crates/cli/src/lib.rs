//! Expression language and command front end for qfun-core.

pub mod app;
pub mod eval;
pub mod expr;
pub mod parser;
pub mod suites;

pub use app::{run, Output};
pub use expr::{Expr, Func, Gen};
pub use parser::{parse, AlgebraKind, Context, ParseError};
