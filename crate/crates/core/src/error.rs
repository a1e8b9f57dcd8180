use thiserror::Error;

use crate::coeffring::CoeffError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("elements belong to different algebras ({0} vs {1})")]
    AlgebraMismatch(String, String),
    #[error("reduction did not terminate: {0}")]
    NonTerminating(String),
    #[error("graded piece has {words} words, above the cap {cap}")]
    DimensionOverflow { words: usize, cap: usize },
    #[error("generator order rejected: {0}")]
    InadmissibleOrder(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("bad index lists: {0}")]
    BadIndexLists(String),
    #[error("element uses the wrong generator order: {0}")]
    OrderMismatch(String),
    #[error("element is not in the sl part: {0}")]
    NotInSlForm(String),
    #[error("element is not in the Borel algebra: {0}")]
    NotInBorel(String),
    #[error("element is outside the integer lattice: {0}")]
    OutOfForm(String),
    #[error("Jacobi identity fails: {0}")]
    JacobiFailure(String),
    #[error("coefficient has a pole at q = 1: {0}")]
    PoleAtOne(String),
    #[error("term count {0} exceeds the configured cap")]
    TooManyTerms(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
