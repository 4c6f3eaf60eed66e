//! The generalized tangent bundle `T ⊕ T*`: Dorfman and Courant brackets,
//! generalized complex structures and generalized submanifolds.

mod structure;
mod submanifold;

use std::sync::Arc;

pub use structure::{gc_check, poisson_of, GCStructure, GcReport, PoissonCertificate};
pub use submanifold::{tau_stability, GeneralizedSubmanifold, TauReport};

use crate::cartan::{exterior_d, interior, lie_derivative, schouten, CartanChart, CartanError, Form, MultiVector};
use crate::scalar::rat;
use crate::Element;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GcError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("twist H is not closed: dH = {0}")]
    TwistNotClosed(String),
    #[error("2-form is degenerate")]
    Degenerate,
    #[error("coefficients are not constant: {0}")]
    NotConstant(String),
    #[error("integrability fails; Schouten residual [P,P] = {residual}")]
    NotIntegrable { residual: String },
    #[error("{0}")]
    Shape(String),
}

/// `v + ξ` with `v` a vector field and `ξ` a one-form on the same chart.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedSection {
    pub vector: MultiVector,
    pub form: Form,
}

impl GeneralizedSection {
    pub fn new(vector: MultiVector, form: Form) -> Result<Self, GcError> {
        if vector.degree().is_some_and(|d| d != 1) || form.degree().is_some_and(|d| d != 1) {
            return Err(GcError::Shape("sections need a vector field and a one-form".into()));
        }
        if !Arc::ptr_eq(vector.space(), form.space()) && **vector.space() != **form.space() {
            return Err(CartanError::ChartMismatch.into());
        }
        Ok(GeneralizedSection { vector, form })
    }

    /// Section with vector components `v` and form components `xi`.
    pub fn from_components(space: &Arc<CartanChart>, v: &[Element], xi: &[Element]) -> Result<Self, GcError> {
        let vector = MultiVector::vector_field(space, v)?;
        if xi.len() != space.dim() {
            return Err(GcError::Shape(format!("expected {} form components", space.dim())));
        }
        let form = xi.iter().enumerate().fold(space.zero(), |acc, (a, c)| &acc + &(c * &space.diff(a)));
        Self::new(vector, Form::new(space, form)?)
    }

    /// Coordinate section `∂_i` (`i < n`) or `dx^(i-n)`.
    pub fn coordinate(space: &Arc<CartanChart>, i: usize) -> Result<Self, GcError> {
        let n = space.dim();
        let mut v = vec![space.zero(); n];
        let mut xi = vec![space.zero(); n];
        if i < n {
            v[i] = space.constant(rat(1, 1));
        } else {
            xi[i - n] = space.constant(rat(1, 1));
        }
        Self::from_components(space, &v, &xi)
    }

    pub fn space(&self) -> &Arc<CartanChart> {
        self.vector.space()
    }

    /// `(v^1..v^n, ξ_1..ξ_n)`.
    pub fn components(&self) -> Vec<Element> {
        let mut out = self.vector.vector_components().expect("vector field");
        out.extend(self.form_components());
        out
    }

    pub fn form_components(&self) -> Vec<Element> {
        let s = self.space();
        (0..s.dim())
            .map(|a| {
                self.form.evaluate_on(&[MultiVector::coordinate(s, a).expect("ordinary chart")]).expect("same chart")
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero() && self.form.is_zero()
    }
}

impl std::ops::Add for &GeneralizedSection {
    type Output = GeneralizedSection;
    fn add(self, rhs: &GeneralizedSection) -> GeneralizedSection {
        GeneralizedSection { vector: &self.vector + &rhs.vector, form: &self.form + &rhs.form }
    }
}

impl std::ops::Sub for &GeneralizedSection {
    type Output = GeneralizedSection;
    fn sub(self, rhs: &GeneralizedSection) -> GeneralizedSection {
        GeneralizedSection { vector: &self.vector - &rhs.vector, form: &self.form - &rhs.form }
    }
}

impl std::fmt::Display for GeneralizedSection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) + ({})", self.vector.element(), self.form.element())
    }
}

fn check_twist(h: Option<&Form>) -> Result<(), GcError> {
    if let Some(h) = h {
        let dh = exterior_d(h);
        if !dh.is_zero() {
            return Err(GcError::TwistNotClosed(dh.element().to_string()));
        }
    }
    Ok(())
}

/// `(v+ξ)∘(w+η) = [v,w] + L_v η - i_w dξ + i_v i_w H`.
pub fn dorfman(
    a: &GeneralizedSection,
    b: &GeneralizedSection,
    h: Option<&Form>,
) -> Result<GeneralizedSection, GcError> {
    check_twist(h)?;
    let vector = schouten(&a.vector, &b.vector)?;
    let mut form = &lie_derivative(&a.vector, &b.form)? - &interior(&b.vector, &exterior_d(&a.form))?;
    if let Some(h) = h {
        form = &form + &interior(&a.vector, &interior(&b.vector, h)?)?;
    }
    Ok(GeneralizedSection { vector, form })
}

/// Antisymmetrized Dorfman bracket.
pub fn courant(
    a: &GeneralizedSection,
    b: &GeneralizedSection,
    h: Option<&Form>,
) -> Result<GeneralizedSection, GcError> {
    let ab = dorfman(a, b, h)?;
    let ba = dorfman(b, a, h)?;
    let half = rat(1, 2);
    let diff = &ab - &ba;
    Ok(GeneralizedSection { vector: diff.vector.scale(&half), form: diff.form.scale(&half) })
}

/// `<v+ξ, w+η> = 1/2 (ξ(w) + η(v))`.
pub fn pairing(a: &GeneralizedSection, b: &GeneralizedSection) -> Result<Element, GcError> {
    let x = a.form.evaluate_on(std::slice::from_ref(&b.vector))?;
    let y = b.form.evaluate_on(std::slice::from_ref(&a.vector))?;
    Ok((&x + &y).scale(&rat(1, 2)))
}
