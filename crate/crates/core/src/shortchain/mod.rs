//! Short chains and short cycles, tilting checks, and the certificate
//! pipeline reconstructing a not-middle module from a tilting datum.

mod chains;
mod enumerate;
mod theorem;
mod tilting;

use serde::Serialize;
use thiserror::Error;

use crate::artrans::{ARQuiverFragment, ArError, FragmentStatus};
use crate::quiveralg::AlgebraError;
use crate::repcat::{RepError, Representation};

pub use chains::{
    is_middle_of_short_chain, lies_on_short_cycle, necessary_conditions, CycleAnswer, CycleVerdict, CycleWitness,
    MiddleWitness, NecessaryConditions, ShortChainAnswer, ShortChainVerdict,
};
pub use enumerate::{enumerate_indecomposables, Enumeration};
pub use theorem::{
    corollary12_check, section_criterion, theorem1_certificate, Corollary12Report, SectionCriterion,
    Theorem1Certificate, Theorem1Options,
};
pub use tilting::{
    ext1_dim, hom_functor_image, is_tilting, tilted_algebra, torsion_membership, Ext1Method, TiltingCertificate,
    TiltingFailure, TiltingVerdict, TorsionClass,
};

/// Where the quantifier over indecomposables ranges.
#[derive(Clone, Copy, Debug)]
pub enum Search<'a> {
    /// The vertices of a knitted fragment; exhaustive when it is complete.
    Fragment(&'a ARQuiverFragment),
    /// All indecomposables up to a total dimension, by brute force.
    Bounded { max_total_dim: usize, budget: usize },
    /// An explicit list of indecomposables.
    Candidates(&'a [Representation]),
}

impl Search<'_> {
    pub const DEFAULT_BOUND: usize = 8;
    pub const DEFAULT_BUDGET: usize = 20_000;

    pub fn bounded_default() -> Search<'static> {
        Search::Bounded { max_total_dim: Self::DEFAULT_BOUND, budget: Self::DEFAULT_BUDGET }
    }
}

/// What a negative answer actually covered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Fragment { status: FragmentStatus, vertices: usize },
    Bounded { requested_bound: usize, completed_bound: usize, candidates_examined: usize, budget: usize },
    Candidates { count: usize },
}

#[derive(Debug, Error)]
pub enum ShortChainError {
    #[error("module is not indecomposable")]
    NotIndecomposable,
    #[error("decomposition undecided")]
    UndecidedDecomposition,
    #[error("algebra is not hereditary")]
    NotHereditary,
    #[error("the direct sum of the section is not faithful")]
    NotFaithful,
    #[error("Hom(X, tau Y) is nonzero for section vertices {0} and {1}")]
    HomTauObstruction(usize, usize),
    #[error("endomorphism algebra of the section is not hereditary")]
    NotHereditaryEnd,
    #[error("module is the middle of a short chain")]
    NotApplicable(Box<ShortChainVerdict>),
    #[error("knitting stopped at the limits: {0:?}")]
    DeskScaleExceeded(FragmentStatus),
    #[error("no section contains all summands")]
    NoSectionFound,
    #[error("module is not {0}")]
    NotTilting(TiltingFailure),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Ar(#[from] ArError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
