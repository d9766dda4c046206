//! The module category: representations, Hom spaces, isomorphism,
//! decomposition, endomorphism algebras and transport along quotients.

mod decompose;
mod endo;
mod hom;
mod props;
mod representation;

use thiserror::Error;

pub use decompose::{
    decompose, decompose_with_maps, is_isomorphic, is_local, radical_basis, Decomposition, DecompositionReport,
    DecompositionStatus, Summand,
};
pub use endo::{endomorphism_algebra, endomorphism_algebra_with, EndomorphismAlgebra};
pub use hom::{
    cokernel, direct_sum, direct_sum_with_maps, end_basis, hom_basis, hom_dim, image, kernel, DirectSum, HomBasis,
};
pub use props::{
    annihilator, class_vector, inflate_from_quotient, is_faithful, is_sincere, restrict_to_quotient, ClassVector,
};
pub use representation::{Morphism, Representation};


#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("decomposition undecided: a summand has a non-split endomorphism residue")]
    UndecidedDecomposition,
    #[error("the ideal does not annihilate the module")]
    IdealActsNonzero,
    #[error("module is not indecomposable")]
    NotIndecomposable,
    #[error(transparent)]
    Algebra(#[from] crate::quiveralg::AlgebraError),
}
