//! Differential forms, multivector fields and vector-valued forms on a
//! coordinate chart, with exterior derivative, contractions and the
//! Schouten, Frölicher–Nijenhuis and Nijenhuis–Richardson brackets.

mod brackets;
mod conventions;
mod tensors;

use std::sync::Arc;

pub use brackets::{
    d_element, d_k, exterior_d, fn_bracket, insert, interior, lie_derivative, nijenhuis_torsion, nr_bracket,
    nr_bracket_with, schouten, LieDerivative,
};
pub use conventions::{Conventions, DeltaTwist};
pub use tensors::{Form, MultiVector, VectorValuedForm};

use crate::symcore::{Chart, Degree, Generator, SymError};
use crate::Element;

/// Default cap on the number of degree-zero coordinates of a chart.
pub const DEFAULT_MAX_EVEN: usize = 8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CartanError {
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("tensors live on different charts")]
    ChartMismatch,
    #[error("chart has {found} even coordinates, limit is {cap}")]
    DimensionCap { found: usize, cap: usize },
    #[error("chart carries no multivector symbols")]
    NoMultivectorSymbols,
    #[error("{0}")]
    Shape(String),
}

/// A chart together with its differentials `dz` and, optionally, the odd
/// symbols `∂z` standing for coordinate vector fields.
///
/// Generator layout: coordinates, then differentials, then vector symbols.
/// A coordinate of bidegree `(0,q)` has differential `(1,q)`; vector symbols
/// have bidegree `(0,1)` and only exist on charts whose coordinates are all
/// of degree zero.
#[derive(Debug, PartialEq)]
pub struct CartanChart {
    chart: Arc<Chart>,
    dim: usize,
    multivectors: bool,
}

impl CartanChart {
    pub fn new(coords: &[(String, i32)], multivectors: bool, max_even: usize) -> Result<Arc<Self>, CartanError> {
        let even = coords.iter().filter(|(_, q)| *q == 0).count();
        if even > max_even {
            return Err(CartanError::DimensionCap { found: even, cap: max_even });
        }
        if multivectors && coords.iter().any(|(_, q)| *q != 0) {
            return Err(CartanError::Shape("vector symbols require degree-zero coordinates".into()));
        }
        let mut gens: Vec<Generator> =
            coords.iter().map(|(n, q)| Generator { name: n.clone(), degree: Degree::new(0, *q) }).collect();
        gens.extend(coords.iter().map(|(n, q)| Generator { name: format!("d{n}"), degree: Degree::new(1, *q) }));
        if multivectors {
            gens.extend(coords.iter().map(|(n, _)| Generator { name: format!("∂{n}"), degree: Degree::new(0, 1) }));
        }
        Ok(Arc::new(CartanChart { chart: Chart::new(gens)?, dim: coords.len(), multivectors }))
    }

    /// Ordinary chart with vector symbols.
    pub fn ordinary(names: &[&str]) -> Result<Arc<Self>, CartanError> {
        let coords: Vec<(String, i32)> = names.iter().map(|n| (n.to_string(), 0)).collect();
        Self::new(&coords, true, DEFAULT_MAX_EVEN)
    }

    /// Graded chart (no vector symbols), e.g. `x^i` in degree 0 and `ξ^a` in degree 1.
    pub fn graded(coords: &[(&str, i32)]) -> Result<Arc<Self>, CartanError> {
        let coords: Vec<(String, i32)> = coords.iter().map(|(n, q)| (n.to_string(), *q)).collect();
        Self::new(&coords, false, DEFAULT_MAX_EVEN)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn has_multivectors(&self) -> bool {
        self.multivectors
    }

    pub fn coord_name(&self, a: usize) -> &str {
        &self.chart.generator(a).name
    }

    pub fn coord_index(&self, name: &str) -> Result<usize, CartanError> {
        match self.chart.position(name) {
            Some(i) if i < self.dim => Ok(i),
            _ => Err(SymError::UnknownGenerator(name.to_string()).into()),
        }
    }

    pub fn coord_degree(&self, a: usize) -> Degree {
        self.chart.degree(a)
    }

    pub(crate) fn diff_index(&self, a: usize) -> usize {
        self.dim + a
    }

    pub(crate) fn vector_index(&self, a: usize) -> usize {
        debug_assert!(self.multivectors);
        2 * self.dim + a
    }

    pub fn coord(&self, a: usize) -> Element {
        Element::generator_at(&self.chart, a)
    }

    pub fn diff(&self, a: usize) -> Element {
        Element::generator_at(&self.chart, self.diff_index(a))
    }

    pub fn vector_symbol(&self, a: usize) -> Result<Element, CartanError> {
        if !self.multivectors {
            return Err(CartanError::NoMultivectorSymbols);
        }
        Ok(Element::generator_at(&self.chart, self.vector_index(a)))
    }

    pub fn zero(&self) -> Element {
        Element::zero(&self.chart)
    }

    pub fn constant(&self, c: crate::Rational) -> Element {
        Element::constant(&self.chart, c)
    }

    /// Empty derivation image table.
    pub(crate) fn no_images(&self) -> Vec<Option<Element>> {
        vec![None; self.chart.len()]
    }

    /// Number of differential factors in a monomial.
    pub(crate) fn form_count(&self, m: &[u32]) -> u32 {
        m[self.dim..2 * self.dim].iter().sum()
    }

    /// Number of vector-symbol factors in a monomial.
    pub(crate) fn vector_count(&self, m: &[u32]) -> u32 {
        if self.multivectors {
            m[2 * self.dim..].iter().sum()
        } else {
            0
        }
    }

    pub(crate) fn check(&self, e: &Element) -> Result<(), CartanError> {
        if Arc::ptr_eq(e.chart(), &self.chart) || **e.chart() == *self.chart {
            Ok(())
        } else {
            Err(CartanError::ChartMismatch)
        }
    }
}
