//! Auslander-Reiten theory: presentations, the translates, almost split
//! sequences, knitting and sections.

mod ext;
mod knit;
mod presentation;
mod sections;
mod translate;

use thiserror::Error;

use crate::repcat::RepError;

pub use ext::{almost_split_sequence, AlmostSplitSequence, Ext1Space};
pub use knit::{knit, ARQuiverFragment, FragmentArrow, FragmentStatus, KnitLimits};
pub use presentation::{
    free_module, generator_position, is_projective, map_from_free, minimal_projective_presentation,
    projective_cover, ProjectiveCover, ProjectivePresentation,
};
pub use sections::{
    compose_irreducibles, find_sections, is_sectional, least_section_by_component, sectional_paths, validate_section,
    validate_section_union, Section,
};
pub use translate::{dual, tau, tau_minus, transpose};

#[derive(Debug, Error)]
pub enum ArError {
    #[error("module is projective, no almost split sequence ends in it")]
    IsProjective,
    #[error("path is not a path of the fragment")]
    PathNotInFragment,
    #[error("vertices lie in more than one component")]
    NotOneComponent,
    #[error("not a section: {0}")]
    NotASection(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
