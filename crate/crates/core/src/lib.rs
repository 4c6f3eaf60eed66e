//! Exact symbolic engine for Poisson Lie algebroids, generalized complex
//! structures, homotopy holomorphic structures on formal quotient stacks and
//! shifted symplectic checks on their two-term tangent complexes.

#![allow(clippy::needless_range_loop)]

pub mod affine;
pub mod algebroid;
pub mod cartan;
pub mod gencomplex;
pub mod holostack;
pub mod linalg;
pub mod random;
pub mod report;
pub mod scalar;
pub mod stacky;
pub mod symcore;
pub mod tori;

pub use scalar::{Conjugate, Scalar};

/// Exact rationals; the default coefficient field.
pub type Rational = num::BigRational;
/// Gaussian rationals, for complexified fibers.
pub type ComplexRational = num::Complex<Rational>;

pub type Element = symcore::GradedElement<Rational>;
pub type QMatrix = linalg::Matrix<Rational>;
pub type CMatrix = linalg::Matrix<ComplexRational>;
