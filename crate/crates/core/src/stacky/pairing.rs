use std::collections::BTreeMap;

use super::complex::{sign, GradedMap, LinearComplex};
use super::StackyError;
use crate::report::{Check, Residuals};
use crate::{QMatrix, Rational};

/// Degree-`n` bilinear pairing on a complex: `⟨x, y⟩ = yᵀ β_k x` for
/// `x ∈ V^k`, `y ∈ V^(-k-n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pairing {
    complex: LinearComplex,
    shift: i32,
    blocks: BTreeMap<i32, QMatrix>,
}

impl Pairing {
    pub fn new(complex: &LinearComplex, shift: i32, blocks: BTreeMap<i32, QMatrix>) -> Result<Self, StackyError> {
        let mut kept = BTreeMap::new();
        for (k, b) in blocks {
            if b.rows() != complex.dim(-k - shift) || b.cols() != complex.dim(k) {
                return Err(StackyError::Shape(format!("pairing block in degree {k} has the wrong shape")));
            }
            if !b.is_zero() {
                kept.insert(k, b);
            }
        }
        Ok(Pairing { complex: complex.clone(), shift, blocks: kept })
    }

    pub fn zero(complex: &LinearComplex, shift: i32) -> Self {
        Pairing { complex: complex.clone(), shift, blocks: BTreeMap::new() }
    }

    pub fn from_fn(complex: &LinearComplex, shift: i32, f: impl Fn(i32) -> QMatrix) -> Result<Self, StackyError> {
        Self::new(complex, shift, complex.degrees().map(|k| (k, f(k))).collect())
    }

    /// Symplectic vector space `(R^dim, ω)` in degree 0.
    pub fn symplectic(omega: &QMatrix) -> Result<Self, StackyError> {
        let v = LinearComplex::concentrated(0, omega.rows());
        Self::new(&v, 0, BTreeMap::from([(0, omega.transpose())]))
    }

    pub fn complex(&self) -> &LinearComplex {
        &self.complex
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn block(&self, k: i32) -> QMatrix {
        self.blocks
            .get(&k)
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.complex.dim(-k - self.shift), self.complex.dim(k)))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn evaluate(&self, k: i32, x: &[Rational], y: &[Rational]) -> Rational {
        let bx = self.block(k).apply(x);
        bx.iter().zip(y).fold(Rational::from_integer(0.into()), |acc, (a, b)| acc + a * b)
    }

    /// `x ↦ ⟨x, -⟩` as a degree-zero map `V → V∨[n]`.
    pub fn flat(&self) -> GradedMap {
        let target = self.complex.dual().shift(self.shift);
        GradedMap::new(&self.complex, &target, 0, self.blocks.clone()).expect("pairing shapes")
    }

    /// The same blocks read as a degree `-1` map `V → V∨[n+1]`, i.e. a
    /// candidate null-homotopy for maps into `V∨[n+1]`.
    pub fn as_homotopy(&self) -> GradedMap {
        let target = self.complex.dual().shift(self.shift + 1);
        GradedMap::new(&self.complex, &target, -1, self.blocks.clone()).expect("pairing shapes")
    }

    /// `⟨y, x⟩ = -(-1)^(|x||y|) ⟨x, y⟩`.
    pub fn antisymmetry(&self) -> Check {
        let mut res = Residuals::new();
        for k in self.complex.degrees() {
            let m = -k - self.shift;
            let defect = &self.block(k) + &self.block(m).transpose().scale(&sign(k * m));
            res.push_if(!defect.is_zero(), format!("degree {k}"), &defect);
        }
        res.into_check()
    }

    /// Compatibility with the differential, equivalently `flat` being a chain map.
    pub fn closure(&self) -> Check {
        let b = self.flat().boundary();
        let mut res = Residuals::new();
        for k in self.complex.degrees() {
            let c = b.component(k);
            res.push_if(!c.is_zero(), format!("degree {k}"), &c);
        }
        res.into_check()
    }

    pub fn nondegeneracy(&self) -> Check {
        let flat = self.flat();
        let mut check = Check::verdict(flat.is_quasi_iso());
        for (k, h) in self.complex.cohomology_dims() {
            check = check.with_note(format!("H^{k}"), h);
        }
        check
    }

    /// `f*β` on the source of a chain map into this pairing's complex.
    pub fn pullback(&self, f: &GradedMap) -> Result<Pairing, StackyError> {
        if f.target() != &self.complex || f.degree() != 0 {
            return Err(StackyError::Shape("pullback along a map into another complex".into()));
        }
        let n = self.shift;
        Pairing::from_fn(f.source(), n, |k| &(&f.component(-k - n).transpose() * &self.block(k)) * &f.component(k))
    }

    pub fn scale(&self, c: &Rational) -> Pairing {
        Pairing::from_fn(&self.complex, self.shift, |k| self.block(k).scale(c)).expect("same shape")
    }
}
