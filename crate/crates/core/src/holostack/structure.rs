use std::collections::BTreeMap;

use super::HolostackError;
use crate::algebroid::{check_axioms, CeModel};
use crate::cartan::{fn_bracket, nr_bracket_with, Conventions, DeltaTwist, VectorValuedForm};
use crate::report::{Check, Residuals, Summary};
use crate::scalar::rat;
use crate::symcore::Degree;

/// `(𝓘, 𝓠)` on the graded chart of `A[1]`. `complex_parts[p-1]` has bidegree
/// `(p, 1-p)` and `homotopy_parts[p-1]` has bidegree `(p, -p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HHStructure {
    model: CeModel,
    complex_parts: Vec<VectorValuedForm>,
    homotopy_parts: Vec<VectorValuedForm>,
}

fn trimmed(mut parts: Vec<VectorValuedForm>) -> Vec<VectorValuedForm> {
    while parts.last().is_some_and(|k| k.is_zero()) {
        parts.pop();
    }
    parts
}

fn validate(model: &CeModel, parts: &[VectorValuedForm], internal: i32, what: &str) -> Result<(), HolostackError> {
    for (i, k) in parts.iter().enumerate() {
        k.same_space(&VectorValuedForm::zero(model.space()))?;
        let p = i as i32 + 1;
        let want = Degree::new(p, internal - p);
        if let Some(bad) = k.homogeneous_parts().keys().find(|d| **d != want) {
            return Err(HolostackError::Bidegree(format!(
                "{what}_{p} has a component of bidegree {bad}, expected {want}"
            )));
        }
    }
    Ok(())
}

impl HHStructure {
    pub fn new(
        model: &CeModel,
        complex_parts: Vec<VectorValuedForm>,
        homotopy_parts: Vec<VectorValuedForm>,
    ) -> Result<Self, HolostackError> {
        validate(model, &complex_parts, 1, "I")?;
        validate(model, &homotopy_parts, 0, "Q")?;
        Ok(HHStructure {
            model: model.clone(),
            complex_parts: trimmed(complex_parts),
            homotopy_parts: trimmed(homotopy_parts),
        })
    }

    pub fn zero(model: &CeModel) -> Self {
        HHStructure { model: model.clone(), complex_parts: Vec::new(), homotopy_parts: Vec::new() }
    }

    pub fn model(&self) -> &CeModel {
        &self.model
    }

    /// `𝓘_p`, zero past the stored range.
    pub fn complex_part(&self, p: usize) -> VectorValuedForm {
        p.checked_sub(1)
            .and_then(|i| self.complex_parts.get(i).cloned())
            .unwrap_or_else(|| VectorValuedForm::zero(self.model.space()))
    }

    /// `𝓠_p`, zero past the stored range.
    pub fn homotopy_part(&self, p: usize) -> VectorValuedForm {
        p.checked_sub(1)
            .and_then(|i| self.homotopy_parts.get(i).cloned())
            .unwrap_or_else(|| VectorValuedForm::zero(self.model.space()))
    }

    pub fn complex_parts(&self) -> &[VectorValuedForm] {
        &self.complex_parts
    }

    pub fn homotopy_parts(&self) -> &[VectorValuedForm] {
        &self.homotopy_parts
    }

    pub fn complex_total(&self) -> VectorValuedForm {
        sum(self.model.space(), &self.complex_parts)
    }

    pub fn homotopy_total(&self) -> VectorValuedForm {
        sum(self.model.space(), &self.homotopy_parts)
    }
}

fn sum(space: &std::sync::Arc<crate::cartan::CartanChart>, parts: &[VectorValuedForm]) -> VectorValuedForm {
    parts.iter().fold(VectorValuedForm::zero(space), |acc, k| &acc + k)
}

/// `δK = [Q, K]_FN` with `Q` the homological vector field of the model.
pub fn delta(model: &CeModel, k: &VectorValuedForm) -> Result<VectorValuedForm, HolostackError> {
    Ok(fn_bracket(model.homological_field(), k)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HhsReport {
    /// `[𝓘, 𝓠]_NR`.
    pub eq1: Check,
    /// `δ𝓘 + ½[𝓘, 𝓘]_FN`.
    pub eq2: Check,
    /// `δ_𝓘 𝓠 + ½[𝓘, 𝓘]_NR + id`.
    pub eq3: Check,
    pub residuals: [BTreeMap<Degree, VectorValuedForm>; 3],
    pub conventions: BTreeMap<String, String>,
}

impl Summary for HhsReport {
    fn checks(&self) -> Vec<(String, Check)> {
        vec![("eq1".into(), self.eq1.clone()), ("eq2".into(), self.eq2.clone()), ("eq3".into(), self.eq3.clone())]
    }

    fn details(&self) -> BTreeMap<String, String> {
        self.conventions.clone()
    }
}

fn split(k: &VectorValuedForm) -> (Check, BTreeMap<Degree, VectorValuedForm>) {
    let parts = k.homogeneous_parts();
    let mut res = Residuals::new();
    let space = k.space();
    for (deg, part) in &parts {
        for (a, c) in part.components().iter().enumerate() {
            res.push_if(!c.is_zero(), format!("{deg} ∂{}", space.coord_name(a)), c);
        }
    }
    (res.into_check(), parts)
}

pub fn check_hhs(h: &HHStructure) -> Result<HhsReport, HolostackError> {
    check_hhs_with(h, &Conventions::default())
}

/// Evaluates the three defining equations; each check lists the nonzero
/// residual components by bidegree and coordinate direction.
pub fn check_hhs_with(h: &HHStructure, conventions: &Conventions) -> Result<HhsReport, HolostackError> {
    let axioms = check_axioms(h.model.algebroid());
    if !axioms.passed() {
        return Err(HolostackError::NotAnAlgebroid);
    }
    let model = &h.model;
    let i = h.complex_total();
    let q = h.homotopy_total();
    let half = rat(1, 2);

    let r1 = nr_bracket_with(&i, &q, conventions)?;
    let r2 = &delta(model, &i)? + &fn_bracket(&i, &i)?.scale(&half);
    let mut twisted = delta(model, &q)?;
    if conventions.delta_twist == DeltaTwist::Fn {
        twisted = &twisted + &fn_bracket(&i, &q)?;
    }
    let r3 =
        &(&twisted + &nr_bracket_with(&i, &i, conventions)?.scale(&half)) + &VectorValuedForm::identity(model.space());

    let (eq1, s1) = split(&r1);
    let (eq2, s2) = split(&r2);
    let (mut eq3, s3) = split(&r3);
    if model.space().dim() == 0 {
        // zero tangent complex: -id vanishes, so no data can realize the normalization
        eq3 = Check::fail("degenerate", "tangent complex is zero").with_note("degenerate", "true");
    }
    Ok(HhsReport { eq1, eq2, eq3, residuals: [s1, s2, s3], conventions: conventions.table() })
}
