//! Twisted generalized Weyl algebras: presentations and word normal forms.

mod presentation;
mod qwa_algebra;
mod relem;
mod word;

pub use presentation::{
    ccr, check_consistency, qwa, qwa_from_env, sign_flip_rank2, ConsistencyReport, TgwaPresentation,
};
pub use qwa_algebra::{QwaAlgebra, UnitGroup};
pub use relem::{Affine, RElem};
pub use word::{normalize, pair_at, reduce_word, star, CanonicalWord, Letter, Word};
