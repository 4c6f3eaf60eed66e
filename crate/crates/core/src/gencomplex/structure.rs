use std::sync::Arc;

use super::{check_twist, courant, GcError, GeneralizedSection};
use crate::cartan::{schouten, CartanChart, Form, MultiVector, VectorValuedForm};
use crate::report::{Check, Residuals, Summary};
use crate::scalar::{int, rat};
use crate::{Element, QMatrix};

type SymMatrix = Vec<Vec<Element>>;

/// `J = [[-I, P], [Q, Iᵀ]]` acting on coordinate columns `(v; ξ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GCStructure {
    space: Arc<CartanChart>,
    i_block: SymMatrix,
    p_block: SymMatrix,
    q_block: SymMatrix,
    twist: Option<Form>,
}

fn square(space: &CartanChart, m: &SymMatrix, what: &str) -> Result<(), GcError> {
    let n = space.dim();
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(GcError::Shape(format!("{what} block must be {n}x{n}")));
    }
    Ok(())
}

fn antisymmetric(m: &SymMatrix) -> bool {
    (0..m.len()).all(|i| (0..m.len()).all(|j| (&m[i][j] + &m[j][i]).is_zero()))
}

fn constant_block(space: &Arc<CartanChart>, m: &QMatrix) -> SymMatrix {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| space.constant(m[(i, j)].clone())).collect()).collect()
}

fn mat_mul(a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
    let chart = a[0][0].chart().clone();
    let (k, m) = (b.len(), b.first().map_or(0, |r| r.len()));
    a.iter()
        .map(|row| (0..m).map(|j| (0..k).fold(Element::zero(&chart), |acc, l| &acc + &(&row[l] * &b[l][j]))).collect())
        .collect()
}

fn transpose(a: &SymMatrix) -> SymMatrix {
    let n = a.first().map_or(0, |r| r.len());
    (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

impl GCStructure {
    pub fn new(
        space: &Arc<CartanChart>,
        i_block: SymMatrix,
        p_block: SymMatrix,
        q_block: SymMatrix,
        twist: Option<Form>,
    ) -> Result<Self, GcError> {
        if !space.has_multivectors() {
            return Err(GcError::Shape("generalized structures need an ordinary chart".into()));
        }
        square(space, &i_block, "I")?;
        square(space, &p_block, "P")?;
        square(space, &q_block, "Q")?;
        if !antisymmetric(&p_block) || !antisymmetric(&q_block) {
            return Err(GcError::Shape("P and Q blocks must be antisymmetric".into()));
        }
        check_twist(twist.as_ref())?;
        Ok(GCStructure { space: space.clone(), i_block, p_block, q_block, twist })
    }

    pub fn from_constant_blocks(
        space: &Arc<CartanChart>,
        i_block: &QMatrix,
        p_block: &QMatrix,
        q_block: &QMatrix,
    ) -> Result<Self, GcError> {
        Self::new(
            space,
            constant_block(space, i_block),
            constant_block(space, p_block),
            constant_block(space, q_block),
            None,
        )
    }

    /// `I = 0, P = ω⁻¹, Q = -ω` for a constant nondegenerate two-form.
    pub fn from_symplectic(omega: &Form) -> Result<Self, GcError> {
        let m = omega.two_form_matrix()?;
        let n = m.len();
        let mut c = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if m[i][j].terms().keys().any(|mono| mono.iter().any(|&k| k > 0)) {
                    return Err(GcError::NotConstant(omega.element().to_string()));
                }
                c[(i, j)] = m[i][j].constant_term();
            }
        }
        Self::from_symplectic_matrix(omega.space(), &c)
    }

    pub fn from_symplectic_matrix(space: &Arc<CartanChart>, omega: &QMatrix) -> Result<Self, GcError> {
        if !omega.is_antisymmetric() {
            return Err(GcError::Shape("symplectic matrix must be antisymmetric".into()));
        }
        let inv = omega.inverse().ok_or(GcError::Degenerate)?;
        let n = space.dim();
        Self::from_constant_blocks(space, &QMatrix::zeros(n, n), &inv, &(-omega))
    }

    /// `I` given as a `(1,1)`-tensor, `P = Q = 0`.
    pub fn from_complex(i: &VectorValuedForm) -> Result<Self, GcError> {
        let space = i.space().clone();
        let n = space.dim();
        let zero = vec![vec![space.zero(); n]; n];
        Self::new(&space, i.matrix(), zero.clone(), zero, None)
    }

    pub fn from_complex_matrix(space: &Arc<CartanChart>, i: &QMatrix) -> Result<Self, GcError> {
        Self::from_complex(&VectorValuedForm::from_constant_matrix(space, i)?)
    }

    pub fn with_twist(mut self, h: Form) -> Result<Self, GcError> {
        check_twist(Some(&h))?;
        self.twist = Some(h);
        Ok(self)
    }

    pub fn space(&self) -> &Arc<CartanChart> {
        &self.space
    }

    pub fn i_block(&self) -> &SymMatrix {
        &self.i_block
    }

    pub fn p_block(&self) -> &SymMatrix {
        &self.p_block
    }

    pub fn q_block(&self) -> &SymMatrix {
        &self.q_block
    }

    pub fn twist(&self) -> Option<&Form> {
        self.twist.as_ref()
    }

    pub fn bivector(&self) -> MultiVector {
        MultiVector::from_bivector_matrix(&self.space, &self.p_block).expect("antisymmetric block")
    }

    pub fn i_tensor(&self) -> VectorValuedForm {
        VectorValuedForm::from_matrix(&self.space, &self.i_block).expect("square block")
    }

    /// Full `2n x 2n` matrix.
    pub fn matrix(&self) -> SymMatrix {
        let n = self.space.dim();
        let mut out = vec![vec![self.space.zero(); 2 * n]; 2 * n];
        for a in 0..n {
            for b in 0..n {
                out[a][b] = -&self.i_block[a][b];
                out[a][n + b] = self.p_block[a][b].clone();
                out[n + a][b] = self.q_block[a][b].clone();
                out[n + a][n + b] = self.i_block[b][a].clone();
            }
        }
        out
    }

    /// The matrix if every entry is constant.
    pub fn constant_matrix(&self) -> Option<QMatrix> {
        let m = self.matrix();
        let n = m.len();
        let mut c = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if m[i][j].terms().keys().any(|mono| mono.iter().any(|&k| k > 0)) {
                    return None;
                }
                c[(i, j)] = m[i][j].constant_term();
            }
        }
        Some(c)
    }

    pub fn apply(&self, u: &GeneralizedSection) -> Result<GeneralizedSection, GcError> {
        let col = u.components();
        let m = self.matrix();
        let n = self.space.dim();
        let out: Vec<Element> =
            m.iter().map(|row| row.iter().zip(&col).fold(self.space.zero(), |acc, (a, b)| &acc + &(a * b))).collect();
        GeneralizedSection::from_components(&self.space, &out[..n], &out[n..])
    }

    fn section_name(&self, i: usize) -> String {
        let n = self.space.dim();
        if i < n {
            format!("∂{}", self.space.coord_name(i))
        } else {
            format!("d{}", self.space.coord_name(i - n))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GcReport {
    pub squares: Check,
    pub pairing: Check,
    pub integrability: Check,
}

impl Summary for GcReport {
    fn checks(&self) -> Vec<(String, Check)> {
        vec![
            ("squares".into(), self.squares.clone()),
            ("pairing".into(), self.pairing.clone()),
            ("integrability".into(), self.integrability.clone()),
        ]
    }
}

fn entry_residuals(m: &SymMatrix) -> Check {
    let mut r = Residuals::new();
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            r.push_if(!e.is_zero(), format!("({i},{j})"), e);
        }
    }
    r.into_check()
}

/// `J² = -1`, `Jᵀ G J = G` for the pairing matrix `G`, and vanishing of the
/// Courant–Nijenhuis tensor on coordinate sections.
pub fn gc_check(j: &GCStructure) -> Result<GcReport, GcError> {
    let space = &j.space;
    let n = space.dim();
    let m = j.matrix();
    let mut sq = mat_mul(&m, &m);
    for (k, row) in sq.iter_mut().enumerate() {
        row[k] = &row[k] + &space.constant(int(1));
    }
    let mut g = vec![vec![space.zero(); 2 * n]; 2 * n];
    for a in 0..n {
        g[a][n + a] = space.constant(rat(1, 2));
        g[n + a][a] = space.constant(rat(1, 2));
    }
    let mut pair = mat_mul(&transpose(&m), &mat_mul(&g, &m));
    for (row, grow) in pair.iter_mut().zip(&g) {
        for (e, ge) in row.iter_mut().zip(grow) {
            *e = &*e - ge;
        }
    }
    let sections: Vec<GeneralizedSection> =
        (0..2 * n).map(|i| GeneralizedSection::coordinate(space, i)).collect::<Result<_, _>>()?;
    let images: Vec<GeneralizedSection> = sections.iter().map(|s| j.apply(s)).collect::<Result<_, _>>()?;
    let h = j.twist();
    let mut integ = Residuals::new();
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            let t1 = courant(&images[a], &images[b], h)?;
            let t2 = j.apply(&courant(&images[a], &sections[b], h)?)?;
            let t3 = j.apply(&courant(&sections[a], &images[b], h)?)?;
            let t4 = courant(&sections[a], &sections[b], h)?;
            let nij = &(&(&t1 - &t2) - &t3) - &t4;
            integ.push_if(!nij.is_zero(), format!("({},{})", j.section_name(a), j.section_name(b)), &nij);
        }
    }
    Ok(GcReport { squares: entry_residuals(&sq), pairing: entry_residuals(&pair), integrability: integ.into_check() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoissonCertificate {
    pub bivector: MultiVector,
    /// `[P,P]`, verified to be zero.
    pub schouten: MultiVector,
}

/// Extracts the Poisson bivector of an integrable structure.
pub fn poisson_of(j: &GCStructure) -> Result<PoissonCertificate, GcError> {
    let report = gc_check(j)?;
    let p = j.bivector();
    let pp = schouten(&p, &p)?;
    if !report.integrability.passed || !pp.is_zero() {
        return Err(GcError::NotIntegrable { residual: pp.element().to_string() });
    }
    Ok(PoissonCertificate { bivector: p, schouten: pp })
}
