//! Affine-linear subspaces `offset + span(basis)` of a coordinate chart.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cartan::{CartanChart, CartanError};
use crate::{Element, QMatrix, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct AffineSubspace {
    basis: QMatrix,
    offset: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AffineError {
    #[error("tangent basis is not independent")]
    Dependent,
    #[error("offset has length {found}, ambient dimension is {expected}")]
    Offset { expected: usize, found: usize },
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

impl AffineSubspace {
    pub fn new(basis: QMatrix, offset: Vec<Rational>) -> Result<Self, AffineError> {
        if basis.rank() != basis.cols() {
            return Err(AffineError::Dependent);
        }
        if offset.len() != basis.rows() {
            return Err(AffineError::Offset { expected: basis.rows(), found: offset.len() });
        }
        Ok(AffineSubspace { basis, offset })
    }

    /// The whole space `R^n`.
    pub fn whole(n: usize) -> Self {
        AffineSubspace { basis: QMatrix::identity(n), offset: vec![Rational::from_integer(0.into()); n] }
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Columns spanning the covectors that vanish on the tangent space.
    pub fn annihilator(&self) -> QMatrix {
        self.basis.transpose().kernel()
    }

    /// Some `L` with `L * basis = 1`.
    pub fn left_inverse(&self) -> QMatrix {
        let bt = self.basis.transpose();
        let gram = &bt * &self.basis;
        &gram.inverse().expect("independent basis") * &bt
    }

    /// Ordinary chart on the subspace with coordinates `prefix0, prefix1, ..`.
    pub fn parameter_chart(&self, prefix: &str) -> Result<Arc<CartanChart>, AffineError> {
        let names: Vec<String> = (0..self.dim()).map(|j| format!("{prefix}{j}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Ok(CartanChart::ordinary(&refs)?)
    }

    /// Pulls a function of the ambient coordinates back along `s ↦ offset + basis s`.
    pub fn restrict(
        &self,
        e: &Element,
        ambient: &CartanChart,
        params: &Arc<CartanChart>,
    ) -> Result<Element, AffineError> {
        let n = self.ambient_dim();
        if ambient.dim() != n || params.dim() != self.dim() {
            return Err(CartanError::Shape("subspace and charts disagree in dimension".into()).into());
        }
        let mut rules = HashMap::new();
        for (idx, g) in e.chart().generators().iter().enumerate() {
            let image = if idx < n {
                (0..self.dim()).fold(params.constant(self.offset[idx].clone()), |acc, j| {
                    &acc + &params.coord(j).scale(&self.basis[(idx, j)])
                })
            } else if e.terms().keys().any(|m| m[idx] > 0) {
                return Err(CartanError::Shape("only functions can be restricted".into()).into());
            } else {
                params.zero()
            };
            rules.insert(g.name.clone(), image);
        }
        Ok(e.pullback(params.chart(), &rules).map_err(CartanError::from)?)
    }
}
