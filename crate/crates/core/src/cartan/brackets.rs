use std::sync::Arc;

use super::{CartanChart, CartanError, Conventions, Form, MultiVector, VectorValuedForm};
use crate::scalar::rat;
use crate::symcore::{Degree, Side};
use crate::Element;

fn sign(exponent: i64) -> bool {
    exponent.rem_euclid(2) == 1
}

/// de Rham differential of an arbitrary element of the chart.
pub fn d_element(space: &Arc<CartanChart>, e: &Element) -> Element {
    let mut images = space.no_images();
    for a in 0..space.dim() {
        images[a] = Some(space.diff(a));
    }
    e.apply_derivation(&images)
}

/// Insertion derivation `i_K`: `dz^a ↦ K^a`, coordinates ↦ 0.
pub fn insert(k: &VectorValuedForm, e: &Element) -> Element {
    let space = k.space();
    let mut images = space.no_images();
    for a in 0..space.dim() {
        images[space.diff_index(a)] = Some(k.component(a).clone());
    }
    e.apply_derivation(&images)
}

/// `d_K = [i_K, d]` for `K` homogeneous of bidegree `deg`.
fn d_along(k: &VectorValuedForm, deg: Degree, e: &Element) -> Element {
    let space = k.space();
    let mut images = space.no_images();
    for a in 0..space.dim() {
        images[a] = Some(k.component(a).clone());
        let dk = d_element(space, k.component(a));
        images[space.diff_index(a)] = Some(if deg.form % 2 == 0 { dk } else { -dk });
    }
    e.apply_derivation(&images)
}

/// `d_K` applied to an element; `K` may be inhomogeneous.
pub fn d_k(k: &VectorValuedForm, e: &Element) -> Element {
    k.homogeneous_parts().into_iter().fold(k.space().zero(), |acc, (deg, part)| &acc + &d_along(&part, deg, e))
}

pub fn exterior_d(f: &Form) -> Form {
    Form::new(f.space(), d_element(f.space(), f.element())).expect("d preserves forms")
}

/// Contraction `i_v` of a vector field into a form.
pub fn interior(v: &MultiVector, f: &Form) -> Result<Form, CartanError> {
    if !Arc::ptr_eq(v.space(), f.space()) && **v.space() != **f.space() {
        return Err(CartanError::ChartMismatch);
    }
    let k = VectorValuedForm::from_vector_field(v)?;
    Form::new(f.space(), insert(&k, f.element()))
}

/// Schouten–Nijenhuis bracket.
pub fn schouten(p: &MultiVector, q: &MultiVector) -> Result<MultiVector, CartanError> {
    let space = p.space();
    if !Arc::ptr_eq(space, q.space()) && **space != **q.space() {
        return Err(CartanError::ChartMismatch);
    }
    let mut out = space.zero();
    for i in 0..space.dim() {
        let t = space.vector_index(i);
        let a = &p.element().derive_at(t, Side::Right) * &q.element().derive_at(i, Side::Left);
        let b = &p.element().derive_at(i, Side::Left) * &q.element().derive_at(t, Side::Left);
        out = &out + &(&a - &b);
    }
    MultiVector::new(space, out)
}

/// Frölicher–Nijenhuis bracket, characterized by `[d_K, d_L] = d_[K,L]`.
pub fn fn_bracket(k: &VectorValuedForm, l: &VectorValuedForm) -> Result<VectorValuedForm, CartanError> {
    k.same_space(l)?;
    let space = k.space();
    let mut comps = vec![space.zero(); space.dim()];
    let lparts = l.homogeneous_parts();
    for (dk, kp) in k.homogeneous_parts() {
        for (dl, lq) in &lparts {
            let flip = sign(dk.pairing(*dl));
            for (a, slot) in comps.iter_mut().enumerate() {
                let first = d_along(&kp, dk, lq.component(a));
                let second = d_along(lq, *dl, kp.component(a));
                *slot = if flip { &(&*slot + &first) + &second } else { &(&*slot + &first) - &second };
            }
        }
    }
    VectorValuedForm::new(space, comps)
}

pub fn nr_bracket(k: &VectorValuedForm, l: &VectorValuedForm) -> Result<VectorValuedForm, CartanError> {
    nr_bracket_with(k, l, &Conventions::default())
}

/// Nijenhuis–Richardson bracket `s * (i_K L - (-1)^(|K| |L|) i_L K)` with
/// `|K| = p + q` the total degree; for `(1,1)`-tensors `i_K L` is the
/// composite `L∘K`, so `1/2 [J,J] = J∘J`.
pub fn nr_bracket_with(
    k: &VectorValuedForm,
    l: &VectorValuedForm,
    conventions: &Conventions,
) -> Result<VectorValuedForm, CartanError> {
    k.same_space(l)?;
    let space = k.space();
    let mut comps = vec![space.zero(); space.dim()];
    let lparts = l.homogeneous_parts();
    for (dk, kp) in k.homogeneous_parts() {
        for (dl, lq) in &lparts {
            let flip = sign(i64::from(dk.total()) * i64::from(dl.total()));
            for (a, slot) in comps.iter_mut().enumerate() {
                let first = insert(&kp, lq.component(a));
                let second = insert(lq, kp.component(a));
                *slot = if flip { &(&*slot + &first) + &second } else { &(&*slot + &first) - &second };
            }
        }
    }
    Ok(VectorValuedForm::new(space, comps)?.scale(&conventions.nr_scale))
}

/// `1/2 [J, J]_FN`.
pub fn nijenhuis_torsion(j: &VectorValuedForm) -> Result<VectorValuedForm, CartanError> {
    Ok(fn_bracket(j, j)?.scale(&rat(1, 2)))
}

pub trait LieDerivative: Sized {
    fn lie_derivative(&self, v: &MultiVector) -> Result<Self, CartanError>;
}

fn as_vector(v: &MultiVector) -> Result<VectorValuedForm, CartanError> {
    if v.degree().is_some_and(|d| d != 1) {
        return Err(CartanError::Shape("Lie derivative needs a vector field".into()));
    }
    VectorValuedForm::from_vector_field(v)
}

impl LieDerivative for Form {
    fn lie_derivative(&self, v: &MultiVector) -> Result<Self, CartanError> {
        let k = as_vector(v)?;
        k.same_space(&VectorValuedForm::zero(self.space()))?;
        Form::new(self.space(), d_along(&k, Degree::ZERO, self.element()))
    }
}

impl LieDerivative for MultiVector {
    fn lie_derivative(&self, v: &MultiVector) -> Result<Self, CartanError> {
        as_vector(v)?;
        schouten(v, self)
    }
}

impl LieDerivative for VectorValuedForm {
    fn lie_derivative(&self, v: &MultiVector) -> Result<Self, CartanError> {
        fn_bracket(&as_vector(v)?, self)
    }
}

pub fn lie_derivative<T: LieDerivative>(v: &MultiVector, t: &T) -> Result<T, CartanError> {
    t.lie_derivative(v)
}
