//! Exact graded-commutative polynomial algebra.
//!
//! Everything downstream (forms, multivectors, vector-valued forms, CE
//! cochains) is a [`GradedElement`] over a suitably extended [`Chart`].

mod chart;
mod element;

pub use chart::{Chart, Degree, Generator};
pub use element::{GradedElement, Monomial, Side};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("elements live on different charts")]
    ChartMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` is not a degree-zero coordinate and cannot take a scalar value")]
    NonScalarAssignment(String),
    #[error("rule for `{generator}` has degree {found:?}, expected {expected}")]
    DegreeMismatch { generator: String, expected: Degree, found: Option<Degree> },
    #[error("monomial has {found} exponents, chart has {expected} generators")]
    MonomialShape { expected: usize, found: usize },
}
