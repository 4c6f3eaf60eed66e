//! Homotopy holomorphic structures `(𝓘, 𝓠)` on formal quotients `[X/A]`,
//! modelled by vector-valued forms on the graded chart of `A[1]`.

mod foliation;
mod from_gc;
mod structure;

pub use foliation::{check_foliation, check_foliation_with, FoliationCandidate, FoliationReport};
pub use from_gc::{hhs_from_gc, GcDerivation};
pub use structure::{check_hhs, check_hhs_with, delta, HHStructure, HhsReport};

use crate::algebroid::AlgebroidError;
use crate::cartan::CartanError;
use crate::gencomplex::GcError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HolostackError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error(transparent)]
    Gc(#[from] GcError),
    #[error("bidegree mismatch: {0}")]
    Bidegree(String),
    #[error("base algebroid fails its axioms")]
    NotAnAlgebroid,
    #[error("generalized complex check failed: {0}")]
    NotGeneralizedComplex(String),
    #[error("{0}")]
    Shape(String),
}

#[cfg(test)]
mod tests;
