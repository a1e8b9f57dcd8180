//! Free associative algebras with rewriting: words, normal forms,
//! confluence, graded pieces and tensors.

mod element;
mod graded;
mod gensym;
mod maps;
mod spec;
mod tensor;
mod word;

pub use element::NCElement;
pub use graded::{graded_component_basis, multidegree_of, words_of_multidegree, GradedPiece};
pub use gensym::{Family, GenSym};
pub use maps::{algebra_map, anti_algebra_map, character, tensor_algebra_map};
pub use spec::{AlgebraSpec, ConfluenceFailure, ConfluenceReport, PostReducer, RewriteRule, SpecBuilder};
pub use tensor::Tensor;
pub use word::{Letter, Poly, Word};
