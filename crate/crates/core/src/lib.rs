//! Exact symbolic algebra for quantum function algebras of SL(n+1), GL(n+1)
//! and M(n+1), their integer forms over Z[q, q^-1], the quantized enveloping
//! algebra of gl(n+1), and the classical enveloping algebras they specialize
//! to at q = 1.

pub mod classical;
pub mod coeffring;
pub mod error;
pub mod intform;
pub mod ncalg;
pub mod qmatrix;
pub mod qsl;
pub mod uq;

pub use coeffring::{AtOne, Coeff, CoeffDomain, CoeffError, LaurentPoly, RatFunc};
pub use error::{Error, Result};
pub use ncalg::{AlgebraSpec, Family, GenSym, NCElement, Poly, Tensor, Word};
