//! The classical limits: the Lie bialgebras h, h' dual to sl(n+1), gl(n+1),
//! their enveloping algebras with PBW normal form, and the displayed
//! cobracket.

mod cobracket;
mod lie;
pub(crate) mod pbw;

pub use cobracket::{
    ad_on_tensor, cocycle_checks, reference_cobracket, reference_cobracket_scaled, ClassicalGen, CocycleCheck, RootScaling,
};
pub use lie::{LieStructure, LieVec};
pub use pbw::{PBWElement, PBWTensor, UAlgebra};
