use std::collections::{BTreeMap, HashMap};

use super::complex::GradedMap;
use super::forms::evaluate_scalar;
use super::forms::{
    fiberwise, pairing_at, residual_check, sample_points, sequence_residuals, tangent_complex, ShiftedTwoForm,
    DEFAULT_SAMPLES, DEFAULT_SEED,
};
use super::linear::{LagrangianReport, LinearLagrangian};
use super::StackyError;
use crate::algebroid::{ce_differential, CeModel};
use crate::cartan::d_element;
use crate::report::{Check, Summary};
use crate::symcore::{Degree, Side};
use crate::{Element, QMatrix, Rational};

/// Map of CE models `Y → 𝒳`, given by the pullbacks of the target's base
/// coordinates and fiber coordinates to the source CE chart.
#[derive(Clone, Debug, PartialEq)]
pub struct StackMap {
    source: CeModel,
    target: CeModel,
    images: Vec<Element>,
}

impl StackMap {
    pub fn new(source: &CeModel, target: &CeModel, images: Vec<Element>) -> Result<Self, StackyError> {
        let tspace = target.space();
        if images.len() != tspace.dim() {
            return Err(StackyError::Shape(format!("expected {} coordinate images", tspace.dim())));
        }
        for (a, img) in images.iter().enumerate() {
            source.space().check(img)?;
            let want = tspace.coord_degree(a);
            if !img.is_zero() && !img.is_homogeneous_of(want) {
                return Err(StackyError::Shape(format!(
                    "image of {} must have bidegree {want:?}",
                    tspace.coord_name(a)
                )));
            }
        }
        let map = StackMap { source: source.clone(), target: target.clone(), images };
        for a in 0..tspace.dim() {
            let lhs = ce_differential(source, &map.images[a])?;
            let rhs = map.pullback(&ce_differential(target, &tspace.coord(a))?)?;
            if lhs != rhs {
                return Err(StackyError::NotAChainMap);
            }
        }
        Ok(map)
    }

    /// The atlas `X → [X/A]`: base coordinates to themselves, fiber coordinates to zero.
    pub fn atlas(target: &CeModel) -> Result<Self, StackyError> {
        let base = target.algebroid().space();
        let source = CeModel::new(&crate::algebroid::LieAlgebroid::abelian(base, 0)?)?;
        let n = base.dim();
        let images = (0..target.space().dim())
            .map(|a| if a < n { source.space().coord(a) } else { source.space().zero() })
            .collect();
        Self::new(&source, target, images)
    }

    pub fn source(&self) -> &CeModel {
        &self.source
    }

    pub fn target(&self) -> &CeModel {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Pullback of a form on the target CE chart.
    pub fn pullback(&self, e: &Element) -> Result<Element, StackyError> {
        let (s, t) = (self.source.space(), self.target.space());
        t.check(e)?;
        let mut rules = HashMap::new();
        for a in 0..t.dim() {
            rules.insert(t.coord_name(a).to_string(), self.images[a].clone());
            rules.insert(format!("d{}", t.coord_name(a)), d_element(s, &self.images[a]));
        }
        Ok(e.pullback(s.chart(), &rules).map_err(crate::cartan::CartanError::from)?)
    }

    fn zero_section(&self, e: &Element) -> Element {
        let s = self.source.space();
        let n = self.source.algebroid().space().dim();
        e.filter(|m| m[n..].iter().all(|&k| k == 0) && m.len() >= s.dim())
    }

    /// Image of a base point.
    pub fn base_point(&self, point: &HashMap<String, Rational>) -> Result<HashMap<String, Rational>, StackyError> {
        let tb = self.target.algebroid().space();
        (0..tb.dim())
            .map(|i| Ok((tb.coord_name(i).to_string(), evaluate_scalar(&self.zero_section(&self.images[i]), point)?)))
            .collect()
    }

    /// Tangent map `T_Y → f*T_𝒳` at a point of the source base.
    pub fn tangent_map(&self, point: &HashMap<String, Rational>) -> Result<GradedMap, StackyError> {
        let (sa, ta) = (self.source.algebroid(), self.target.algebroid());
        let (ns, nt) = (sa.space().dim(), ta.space().dim());
        let source = tangent_complex(sa).at(point)?;
        let target = tangent_complex(ta).at(&self.base_point(point)?)?;
        let jac = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> Result<QMatrix, StackyError> {
            let mut m = QMatrix::zeros(rows.len(), cols.len());
            for (i, a) in rows.clone().enumerate() {
                for (j, b) in cols.clone().enumerate() {
                    let partial = self.images[a].derive_at(b, Side::Left);
                    m[(i, j)] = evaluate_scalar(&self.zero_section(&partial), point)?;
                }
            }
            Ok(m)
        };
        let top = jac(0..nt, 0..ns)?;
        let low = jac(nt..nt + ta.rank(), ns..ns + sa.rank())?;
        GradedMap::new(&source, &target, 0, BTreeMap::from([(-1, low), (0, top)]))
    }
}

/// `(γ_0, γ_1, …)` on the source CE chart, `γ_p` of bidegree `(2+p, n-1-p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropicStructure {
    components: Vec<Element>,
}

impl IsotropicStructure {
    pub fn new(map: &StackMap, shift: i32, components: Vec<Element>) -> Result<Self, StackyError> {
        for (p, c) in components.iter().enumerate() {
            map.source().space().check(c)?;
            let want = Degree::new(2 + p as i32, shift - 1 - p as i32);
            if !c.is_zero() && !c.is_homogeneous_of(want) {
                return Err(StackyError::Shape(format!("component {p} is not of bidegree {want:?}")));
            }
        }
        Ok(IsotropicStructure { components })
    }

    pub fn zero() -> Self {
        IsotropicStructure { components: Vec::new() }
    }

    pub fn components(&self) -> &[Element] {
        &self.components
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianCheck {
    /// `(d + δ)γ - f*ω`, componentwise.
    pub isotropy: Check,
    /// `γ♭` quasi-isomorphic at every sample point.
    pub nondegeneracy: Check,
    pub samples: Vec<LagrangianReport>,
    /// `γ♭ : Fib(df) → T∨_Y[n-1]` at the first sample point.
    pub gamma_flat: Option<GradedMap>,
}

impl Summary for LagrangianCheck {
    fn checks(&self) -> Vec<(String, Check)> {
        vec![("isotropy".into(), self.isotropy.clone()), ("nondegeneracy".into(), self.nondegeneracy.clone())]
    }

    fn details(&self) -> BTreeMap<String, String> {
        let mut d = BTreeMap::new();
        if let Some(g) = &self.gamma_flat {
            for k in g.source().degrees() {
                d.insert(format!("gamma_flat[{k}]"), g.component(k).to_string());
            }
            for (k, h) in g.source().cohomology_dims() {
                d.insert(format!("H^{k}(relative)"), h.to_string());
            }
        }
        d
    }
}

pub fn check_lagrangian(
    f: &StackMap,
    omega: &ShiftedTwoForm,
    gamma: &IsotropicStructure,
) -> Result<LagrangianCheck, StackyError> {
    check_lagrangian_with(f, omega, gamma, DEFAULT_SEED, DEFAULT_SAMPLES)
}

pub fn check_lagrangian_with(
    f: &StackMap,
    omega: &ShiftedTwoForm,
    gamma: &IsotropicStructure,
    seed: u64,
    samples: usize,
) -> Result<LagrangianCheck, StackyError> {
    if omega.model() != f.target() {
        return Err(StackyError::Shape("form lives on a different model than the map's target".into()));
    }
    let pulled: Vec<Element> = omega.components().iter().map(|w| f.pullback(w)).collect::<Result<_, _>>()?;
    let residuals = sequence_residuals(f.source(), gamma.components(), Some(&pulled))?;
    let isotropy = residual_check(&residuals);
    if !isotropy.passed {
        let first = residuals.iter().position(|r| !r.is_zero()).unwrap_or(0);
        return Err(StackyError::NotIsotropic(format!("p = {first}: {}", residuals[first])));
    }
    let n = omega.shift();
    let gamma0 = gamma.components().first().cloned().unwrap_or_else(|| f.source().space().zero());
    let mut verdicts = Vec::new();
    let mut reports = Vec::new();
    let mut gamma_flat = None;
    for pt in sample_points(f.source().algebroid().space(), seed, samples) {
        let target = omega.pairing_at(&f.base_point(&pt)?)?;
        let structure = pairing_at(f.source(), &gamma0, n - 1, &pt)?;
        let lag = LinearLagrangian::new(&target, &f.tangent_map(&pt)?, &structure)?;
        let r = lag.certify();
        if gamma_flat.is_none() {
            gamma_flat = Some(lag.gamma_flat());
        }
        verdicts.push((pt, r.passed()));
        reports.push(r);
    }
    let bound = f.images().iter().map(|e| e.terms().keys().map(|m| m.iter().sum::<u32>()).max().unwrap_or(0)).max();
    Ok(LagrangianCheck {
        isotropy,
        nondegeneracy: fiberwise(verdicts, bound.unwrap_or(0)),
        samples: reports,
        gamma_flat,
    })
}
