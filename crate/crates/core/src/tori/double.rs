use super::{is_integral, SymplecticTorus, ToriError};
use crate::scalar::rat;
use crate::{QMatrix, Rational};

/// `offset + span(basis)` inside a torus; columns need not be independent.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubtorus {
    basis: QMatrix,
    offset: Vec<Rational>,
}

impl LinearSubtorus {
    pub fn new(basis: QMatrix, offset: Vec<Rational>) -> Result<Self, ToriError> {
        if offset.len() != basis.rows() {
            return Err(ToriError::Shape("offset and basis disagree on the ambient dimension".into()));
        }
        Ok(LinearSubtorus { basis, offset })
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// True when the span has an integral basis made of the given columns.
    pub fn is_integral(&self) -> bool {
        is_integral(&self.basis)
    }
}

/// `T × T^∨` with `Ω = ½ω ⊕ -½ω⁻¹` and `Ĵ(v, ξ) = (ω⁻¹ξ, -ωv)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubledTorus {
    base: SymplecticTorus,
    omega: QMatrix,
    complex: QMatrix,
}

fn block(a: &QMatrix, b: &QMatrix, c: &QMatrix, d: &QMatrix) -> QMatrix {
    a.hstack(b).vstack(&c.hstack(d))
}

impl DoubledTorus {
    pub fn new(base: &SymplecticTorus) -> Self {
        let n = base.dim();
        let (w, winv) = (base.omega(), base.omega_inverse());
        let z = QMatrix::zeros(n, n);
        let half = rat(1, 2);
        DoubledTorus {
            omega: block(&w.scale(&half), &z, &z, &winv.scale(&-half.clone())),
            complex: block(&z, &winv, &-w, &z),
            base: base.clone(),
        }
    }

    pub fn base(&self) -> &SymplecticTorus {
        &self.base
    }

    pub fn omega(&self) -> &QMatrix {
        &self.omega
    }

    pub fn complex_structure(&self) -> &QMatrix {
        &self.complex
    }

    /// Underlying torus of dimension `4n` with the doubled form.
    pub fn as_torus(&self) -> SymplecticTorus {
        let n = self.base.dim();
        let names = self.base.names().iter().cloned().chain((0..n).map(|i| self.base.dual_name(i))).collect();
        SymplecticTorus::new(self.omega.clone(), names).expect("doubled form is symplectic")
    }

    pub fn j_squares_to_minus_one(&self) -> bool {
        &self.complex * &self.complex == -&QMatrix::identity(self.complex.rows())
    }

    /// Whether `Ω(Ĵ·, Ĵ·) = Ω`; reported, not assumed.
    pub fn omega_is_j_invariant(&self) -> bool {
        &(&self.complex.transpose() * &self.omega) * &self.complex == self.omega
    }
}

/// `dim L = 2n` and `Ω|_L = 0`.
pub fn is_lagrangian_in_double(l: &LinearSubtorus, d: &DoubledTorus) -> bool {
    if l.ambient_dim() != d.omega.rows() || l.dim() != d.base.dim() {
        return false;
    }
    (&(&l.basis.transpose() * &d.omega) * &l.basis).is_zero()
}

/// `Ĵ(T L) ⊆ T L`.
pub fn is_complex_in_double(l: &LinearSubtorus, d: &DoubledTorus) -> bool {
    l.ambient_dim() == d.complex.rows() && l.basis.spans(&(&d.complex * &l.basis))
}
