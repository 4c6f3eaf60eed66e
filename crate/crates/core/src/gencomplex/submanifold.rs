use std::collections::BTreeMap;

use num::traits::Zero;

use super::{GCStructure, GcError};
use crate::affine::AffineSubspace;
use crate::report::{Check, Summary};
use crate::{CMatrix, ComplexRational, QMatrix, Rational};

/// Affine subspace with a constant two-form `F` in its basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedSubmanifold {
    subspace: AffineSubspace,
    curvature: QMatrix,
}

impl GeneralizedSubmanifold {
    pub fn new(basis: QMatrix, offset: Vec<Rational>, curvature: QMatrix) -> Result<Self, GcError> {
        let subspace = AffineSubspace::new(basis, offset).map_err(|e| GcError::Shape(e.to_string()))?;
        let k = subspace.dim();
        if curvature.rows() != k || curvature.cols() != k || !curvature.is_antisymmetric() {
            return Err(GcError::Shape(format!("F must be an antisymmetric {k}x{k} matrix")));
        }
        Ok(GeneralizedSubmanifold { subspace, curvature })
    }

    pub fn subspace(&self) -> &AffineSubspace {
        &self.subspace
    }

    pub fn curvature(&self) -> &QMatrix {
        &self.curvature
    }

    /// Basis of `τ = {(v, ξ) : v = B s, Bᵀ ξ = Fᵀ s}` inside `T ⊕ T*`.
    pub fn tau(&self) -> QMatrix {
        let basis = self.subspace.basis();
        let (n, k) = (basis.rows(), basis.cols());
        let constraint = (-&self.curvature.transpose()).hstack(&basis.transpose());
        let kernel = constraint.kernel();
        let embed =
            QMatrix::block(&[n, n], &[k, n], &[vec![Some(basis), None], vec![None, Some(&QMatrix::identity(n))]]);
        &embed * &kernel
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauReport {
    pub tau: QMatrix,
    pub stable: Check,
    /// `+i` eigenspace of `J` on `τ ⊗ C`, present when stable.
    pub l_s: Option<CMatrix>,
    pub decomposition: Check,
}

impl Summary for TauReport {
    fn checks(&self) -> Vec<(String, Check)> {
        vec![("stable".into(), self.stable.clone()), ("decomposition".into(), self.decomposition.clone())]
    }

    fn details(&self) -> BTreeMap<String, String> {
        let mut d = BTreeMap::new();
        d.insert("tau_dimension".into(), self.tau.cols().to_string());
        if let Some(l) = &self.l_s {
            d.insert("l_s".into(), l.to_string());
        }
        d
    }
}

fn complexify(m: &QMatrix) -> CMatrix {
    m.map(|v| ComplexRational::new(v.clone(), Rational::zero()))
}

/// Checks `J τ ⊆ τ` and, when stable, splits `τ ⊗ C = L_S ⊕ conj(L_S)`.
pub fn tau_stability(s: &GeneralizedSubmanifold, j: &GCStructure) -> Result<TauReport, GcError> {
    let n = j.space().dim();
    if s.subspace.ambient_dim() != n {
        return Err(GcError::Shape("subspace lives in a different dimension".into()));
    }
    let m = j.matrix();
    let params = s.subspace.parameter_chart("s").map_err(|e| GcError::Shape(e.to_string()))?;
    let mut jc = QMatrix::zeros(2 * n, 2 * n);
    for r in 0..2 * n {
        for c in 0..2 * n {
            let restricted =
                s.subspace.restrict(&m[r][c], j.space(), &params).map_err(|e| GcError::Shape(e.to_string()))?;
            if restricted.terms().keys().any(|mono| mono.iter().any(|&k| k > 0)) {
                return Err(GcError::NotConstant(format!("J entry ({r},{c}) = {}", m[r][c])));
            }
            jc[(r, c)] = restricted.constant_term();
        }
    }
    let tau = s.tau();
    let image = &jc * &tau;
    let stable = tau.spans(&image);
    let mut stable_check = Check::verdict(stable).with_note("tau_dimension", tau.cols());
    if !stable {
        let escaping = image.complement_in(&tau);
        stable_check
            .residuals
            .push(crate::report::Residual { location: "J(tau) outside tau".into(), value: escaping.to_string() });
        return Ok(TauReport { tau, stable: stable_check, l_s: None, decomposition: Check::verdict(false) });
    }
    let i = ComplexRational::new(Rational::zero(), Rational::from_integer(1.into()));
    let tc = complexify(&tau);
    let l = (&tc - &(&complexify(&jc) * &tc).scale(&i)).column_basis();
    let lbar = l.conj();
    let split = l.cols() * 2 == tau.cols() && l.hstack(&lbar).rank() == tau.cols();
    Ok(TauReport {
        tau,
        stable: stable_check,
        decomposition: Check::verdict(split).with_note("l_s_rank", l.cols()),
        l_s: Some(l),
    })
}
