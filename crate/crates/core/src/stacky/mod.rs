//! Tangent complexes of quotient stacks, shifted forms, and linear models of
//! Lagrangian and coisotropic intersections.

mod coisotropic;
mod complex;
mod forms;
mod linear;
mod maps;
mod pairing;
mod triangle;

pub use coisotropic::{assemble_structure, coisotropic_intersection_check, CoisotropicDiagram, CoisotropicReport};
pub use complex::{GradedMap, LinearComplex};
pub use forms::{
    canonical_one_shifted, check_nondegenerate, check_nondegenerate_with, sample_points, tangent_complex,
    ShiftedTwoForm, TwoTermComplex, DEFAULT_SAMPLES, DEFAULT_SEED,
};
pub use linear::{lagrangian_intersection, Intersection, LagrangianReport, LinearLagrangian};
pub use maps::{check_lagrangian, check_lagrangian_with, IsotropicStructure, LagrangianCheck, StackMap};
pub use pairing::Pairing;
pub use triangle::{exact_triangle_check, ExactTriangleDiagram, TriangleReport};

use crate::algebroid::AlgebroidError;
use crate::cartan::CartanError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StackyError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error("{0}")]
    Shape(String),
    #[error("d∘d is nonzero starting in degree {0}")]
    NotAComplex(i32),
    #[error("map does not commute with the differentials")]
    NotAChainMap,
    #[error("diagram does not commute: {0}")]
    NonCommuting(String),
    #[error("not Lagrangian: {0}")]
    NotLagrangian(String),
    #[error("isotropic residual is nonzero: {0}")]
    NotIsotropic(String),
    #[error("hypothesis not certified: {0}")]
    Hypothesis(String),
    #[error("algebroid is not of Poisson type")]
    NotPoissonType,
}

#[cfg(test)]
mod tests;
#[cfg(test)]
mod tests_symbolic;
