//! Linear symplectic tori, coisotropic branes with constant curvature, and
//! their lifts to the doubled torus `T × T^∨`.

mod brane;
mod double;

pub use brane::{is_coisotropic_brane, lift, BraneReport, CoisotropicBrane, LiftEquation};
pub use double::{is_complex_in_double, is_lagrangian_in_double, DoubledTorus, LinearSubtorus};

use crate::{QMatrix, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ToriError {
    #[error("{0}")]
    Shape(String),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("symplectic form is degenerate")]
    Degenerate,
    #[error("subtorus basis must be integral")]
    NotIntegral,
    #[error("brane check failed: {0}")]
    NotABrane(String),
}

/// `(R^2n / Z^2n, ω)` with constant `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticTorus {
    omega: QMatrix,
    names: Vec<String>,
}

impl SymplecticTorus {
    pub fn new(omega: QMatrix, names: Vec<String>) -> Result<Self, ToriError> {
        if !omega.is_antisymmetric() {
            return Err(ToriError::NotAntisymmetric);
        }
        if names.len() != omega.rows() {
            return Err(ToriError::Shape(format!("expected {} coordinate names", omega.rows())));
        }
        if !omega.rows().is_multiple_of(2) || omega.inverse().is_none() {
            return Err(ToriError::Degenerate);
        }
        Ok(SymplecticTorus { omega, names })
    }

    /// `Σ dr_k ∧ dθ_k` in the coordinate order `r1, θ1, r2, θ2, …`.
    pub fn standard(n: usize) -> Self {
        let mut omega = QMatrix::zeros(2 * n, 2 * n);
        let mut names = Vec::with_capacity(2 * n);
        for k in 0..n {
            omega[(2 * k, 2 * k + 1)] = crate::scalar::int(1);
            omega[(2 * k + 1, 2 * k)] = crate::scalar::int(-1);
            names.push(format!("r{}", k + 1));
            names.push(format!("θ{}", k + 1));
        }
        SymplecticTorus { omega, names }
    }

    pub fn dim(&self) -> usize {
        self.omega.rows()
    }

    pub fn omega(&self) -> &QMatrix {
        &self.omega
    }

    pub fn omega_inverse(&self) -> QMatrix {
        self.omega.inverse().expect("checked on construction")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Name of the dual coordinate, e.g. `r̂1`.
    pub fn dual_name(&self, i: usize) -> String {
        let mut chars = self.names[i].chars();
        let head: String = chars.next().into_iter().collect();
        format!("{head}\u{302}{}", chars.as_str())
    }

    /// Antisymmetric matrix from `(i, j, value)` entries of `Σ value dx^i ∧ dx^j`.
    pub fn two_form(&self, entries: &[(usize, usize, Rational)]) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim(), self.dim());
        for (i, j, v) in entries {
            m[(*i, *j)] = m[(*i, *j)].clone() + v.clone();
            m[(*j, *i)] = m[(*j, *i)].clone() - v.clone();
        }
        m
    }
}

pub(crate) fn is_integral(m: &QMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)].is_integer()))
}
