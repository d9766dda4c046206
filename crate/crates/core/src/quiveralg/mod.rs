//! Quivers, admissible relations and finite-dimensional bound quiver algebras.

mod algebra;
pub mod families;
mod iso;
mod ops;
mod present;
mod quiver;
mod structural;

use thiserror::Error;

pub use algebra::{build_algebra, BoundQuiverAlgebra, Element, Sparse, DEFAULT_NILPOTENCY_BOUND};
pub use iso::{compare_algebras, pullback_module, AlgebraComparison, AlgebraIso, IsoLevel};
pub use ops::{
    global_dimension_upto, ideal_closure, is_hereditary, one_point_extension, opposite_algebra, quotient_algebra,
    GlobalDimension, OnePointExtension, QuotientData,
};
pub use present::{present, Generators, Presentation};
pub use quiver::{enumerate_paths, Arrow, Path, Quiver, Relation};
pub use structural::{left_mult_matrix, projective_map_from_element, structural_module, StructuralKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("nonzero paths survive beyond the nilpotency bound {bound}")]
    InfiniteDimensional { bound: usize },
    #[error("the ideal is the whole algebra")]
    ImproperIdeal,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),
}
