use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use super::{CartanChart, CartanError};
use crate::symcore::{Degree, Side};
use crate::{Element, QMatrix, Rational};

/// Differential form: an element with no vector symbols.
#[derive(Clone, PartialEq, Debug)]
pub struct Form {
    space: Arc<CartanChart>,
    value: Element,
}

/// Multivector field: an element with no differentials.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiVector {
    space: Arc<CartanChart>,
    value: Element,
}

/// `K = sum_a K^a ⊗ ∂_a` with each `K^a` a form.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorValuedForm {
    space: Arc<CartanChart>,
    components: Vec<Element>,
}

fn same_space(a: &Arc<CartanChart>, b: &Arc<CartanChart>) -> Result<(), CartanError> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(CartanError::ChartMismatch)
    }
}

impl Form {
    pub fn new(space: &Arc<CartanChart>, value: Element) -> Result<Self, CartanError> {
        space.check(&value)?;
        if value.terms().keys().any(|m| space.vector_count(m) > 0) {
            return Err(CartanError::Shape("form contains vector symbols".into()));
        }
        Ok(Form { space: space.clone(), value })
    }

    pub fn zero(space: &Arc<CartanChart>) -> Self {
        Form { space: space.clone(), value: space.zero() }
    }

    /// `1/2 sum m_ij dz^i dz^j`; `m` should be antisymmetric.
    pub fn from_two_form_matrix(space: &Arc<CartanChart>, m: &[Vec<Element>]) -> Result<Self, CartanError> {
        let n = space.dim();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(CartanError::Shape(format!("expected a {n}x{n} matrix")));
        }
        let mut v = space.zero();
        for i in 0..n {
            for j in i + 1..n {
                space.check(&m[i][j])?;
                v = &v + &(&m[i][j] * &(&space.diff(i) * &space.diff(j)));
            }
        }
        Form::new(space, v)
    }

    pub fn from_constant_two_form(space: &Arc<CartanChart>, m: &QMatrix) -> Result<Self, CartanError> {
        Self::from_two_form_matrix(space, &constant_rows(space, m))
    }

    /// `m_ij = w(∂_i, ∂_j)` for a two-form on an ordinary chart.
    pub fn two_form_matrix(&self) -> Result<Vec<Vec<Element>>, CartanError> {
        let n = self.space.dim();
        let mut rows = vec![vec![self.space.zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            let first = self.value.derive_at(self.space.diff_index(i), Side::Left);
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = first.derive_at(self.space.diff_index(j), Side::Left);
            }
        }
        Ok(rows)
    }

    pub fn space(&self) -> &Arc<CartanChart> {
        &self.space
    }

    pub fn element(&self) -> &Element {
        &self.value
    }

    pub fn into_element(self) -> Element {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Form degree if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.value.terms().keys().map(|m| self.space.form_count(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn wedge(&self, other: &Form) -> Result<Form, CartanError> {
        same_space(&self.space, &other.space)?;
        Ok(Form { space: self.space.clone(), value: &self.value * &other.value })
    }

    pub fn scale(&self, c: &Rational) -> Form {
        Form { space: self.space.clone(), value: self.value.scale(c) }
    }

    /// `w(X1, .., Xp)`, contracting `X1` first.
    pub fn evaluate_on(&self, vectors: &[MultiVector]) -> Result<Element, CartanError> {
        let mut acc = self.clone();
        for v in vectors {
            acc = super::interior(v, &acc)?;
        }
        Ok(acc.value)
    }
}

impl MultiVector {
    pub fn new(space: &Arc<CartanChart>, value: Element) -> Result<Self, CartanError> {
        space.check(&value)?;
        if !space.has_multivectors() {
            return Err(CartanError::NoMultivectorSymbols);
        }
        if value.terms().keys().any(|m| space.form_count(m) > 0) {
            return Err(CartanError::Shape("multivector contains differentials".into()));
        }
        Ok(MultiVector { space: space.clone(), value })
    }

    pub fn zero(space: &Arc<CartanChart>) -> Result<Self, CartanError> {
        Self::new(space, space.zero())
    }

    pub fn coordinate(space: &Arc<CartanChart>, a: usize) -> Result<Self, CartanError> {
        Self::new(space, space.vector_symbol(a)?)
    }

    /// `sum_a v^a ∂_a`.
    pub fn vector_field(space: &Arc<CartanChart>, components: &[Element]) -> Result<Self, CartanError> {
        if components.len() != space.dim() {
            return Err(CartanError::Shape(format!("expected {} components", space.dim())));
        }
        let mut v = space.zero();
        for (a, c) in components.iter().enumerate() {
            space.check(c)?;
            v = &v + &(c * &space.vector_symbol(a)?);
        }
        Self::new(space, v)
    }

    /// `1/2 sum p_ij ∂_i ∂_j`; `p` should be antisymmetric.
    pub fn from_bivector_matrix(space: &Arc<CartanChart>, p: &[Vec<Element>]) -> Result<Self, CartanError> {
        let n = space.dim();
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(CartanError::Shape(format!("expected a {n}x{n} matrix")));
        }
        let mut v = space.zero();
        for i in 0..n {
            for j in i + 1..n {
                space.check(&p[i][j])?;
                v = &v + &(&p[i][j] * &(&space.vector_symbol(i)? * &space.vector_symbol(j)?));
            }
        }
        Self::new(space, v)
    }

    pub fn from_constant_bivector(space: &Arc<CartanChart>, p: &QMatrix) -> Result<Self, CartanError> {
        Self::from_bivector_matrix(space, &constant_rows(space, p))
    }

    /// Antisymmetric coefficient matrix of a bivector.
    pub fn bivector_matrix(&self) -> Vec<Vec<Element>> {
        let n = self.space.dim();
        (0..n)
            .map(|i| {
                let first = self.value.derive_at(self.space.vector_index(i), Side::Left);
                (0..n).map(|j| first.derive_at(self.space.vector_index(j), Side::Left)).collect()
            })
            .collect()
    }

    /// Coefficients `v^a` of a vector field.
    pub fn vector_components(&self) -> Result<Vec<Element>, CartanError> {
        if self.degree().is_some_and(|d| d != 1) {
            return Err(CartanError::Shape("not a vector field".into()));
        }
        Ok((0..self.space.dim()).map(|a| self.value.derive_at(self.space.vector_index(a), Side::Left)).collect())
    }

    /// `v(f)` for a vector field `v` and function `f`.
    pub fn apply_to(&self, f: &Element) -> Result<Element, CartanError> {
        self.space.check(f)?;
        let comps = self.vector_components()?;
        let mut out = self.space.zero();
        for (a, c) in comps.iter().enumerate() {
            out = &out + &(c * &f.derive_at(a, Side::Left));
        }
        Ok(out)
    }

    pub fn space(&self) -> &Arc<CartanChart> {
        &self.space
    }

    pub fn element(&self) -> &Element {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        let mut it = self.value.terms().keys().map(|m| self.space.vector_count(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> MultiVector {
        MultiVector { space: self.space.clone(), value: self.value.scale(c) }
    }
}

impl VectorValuedForm {
    pub fn new(space: &Arc<CartanChart>, components: Vec<Element>) -> Result<Self, CartanError> {
        if components.len() != space.dim() {
            return Err(CartanError::Shape(format!("expected {} components", space.dim())));
        }
        for c in &components {
            space.check(c)?;
            if c.terms().keys().any(|m| space.vector_count(m) > 0) {
                return Err(CartanError::Shape("component contains vector symbols".into()));
            }
        }
        Ok(VectorValuedForm { space: space.clone(), components })
    }

    pub fn zero(space: &Arc<CartanChart>) -> Self {
        VectorValuedForm { space: space.clone(), components: vec![space.zero(); space.dim()] }
    }

    /// `sum_a dz^a ⊗ ∂_a`.
    pub fn identity(space: &Arc<CartanChart>) -> Self {
        VectorValuedForm { space: space.clone(), components: (0..space.dim()).map(|a| space.diff(a)).collect() }
    }

    /// `K^a = sum_b m[a][b] dz^b`.
    pub fn from_matrix(space: &Arc<CartanChart>, m: &[Vec<Element>]) -> Result<Self, CartanError> {
        let n = space.dim();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(CartanError::Shape(format!("expected a {n}x{n} matrix")));
        }
        let comps = m
            .iter()
            .map(|row| row.iter().enumerate().fold(space.zero(), |acc, (b, c)| &acc + &(c * &space.diff(b))))
            .collect();
        Self::new(space, comps)
    }

    pub fn from_constant_matrix(space: &Arc<CartanChart>, m: &QMatrix) -> Result<Self, CartanError> {
        Self::from_matrix(space, &constant_rows(space, m))
    }

    pub fn from_vector_field(v: &MultiVector) -> Result<Self, CartanError> {
        Self::new(v.space(), v.vector_components()?)
    }

    pub fn to_vector_field(&self) -> Result<MultiVector, CartanError> {
        if self.components.iter().any(|c| c.terms().keys().any(|m| self.space.form_count(m) > 0)) {
            return Err(CartanError::Shape("form degree must be zero".into()));
        }
        MultiVector::vector_field(&self.space, &self.components)
    }

    /// `m[a][b]` with `K^a = sum_b m[a][b] dz^b` on the one-form part.
    pub fn matrix(&self) -> Vec<Vec<Element>> {
        self.components
            .iter()
            .map(|c| (0..self.space.dim()).map(|b| c.derive_at(self.space.diff_index(b), Side::Left)).collect())
            .collect()
    }

    pub fn space(&self) -> &Arc<CartanChart> {
        &self.space
    }

    pub fn component(&self, a: usize) -> &Element {
        &self.components[a]
    }

    pub fn components(&self) -> &[Element] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorValuedForm { space: self.space.clone(), components: self.components.iter().map(|k| k.scale(c)).collect() }
    }

    pub fn map_components(&self, f: impl Fn(&Element) -> Element) -> Self {
        VectorValuedForm { space: self.space.clone(), components: self.components.iter().map(f).collect() }
    }

    /// Split by bidegree, where a term `f ⊗ ∂_a` has degree `|f| - |z^a|`.
    pub fn homogeneous_parts(&self) -> BTreeMap<Degree, VectorValuedForm> {
        let mut parts: BTreeMap<Degree, VectorValuedForm> = BTreeMap::new();
        for (a, c) in self.components.iter().enumerate() {
            let shift = self.space.coord_degree(a);
            let mut by_degree: BTreeMap<Degree, Vec<_>> = BTreeMap::new();
            for (m, k) in c.terms() {
                by_degree.entry(c.monomial_degree(m) - shift).or_default().push((m.clone(), k.clone()));
            }
            for (d, terms) in by_degree {
                let piece = Element::from_terms(self.space.chart(), terms).expect("shape preserved");
                let entry = parts.entry(d).or_insert_with(|| VectorValuedForm::zero(&self.space));
                entry.components[a] = piece;
            }
        }
        parts
    }

    /// Bidegree if homogeneous; `None` for zero or mixed.
    pub fn bidegree(&self) -> Option<Degree> {
        let parts = self.homogeneous_parts();
        (parts.len() == 1).then(|| *parts.keys().next().unwrap())
    }

    /// `K(X1, .., Xp)` as a vector field.
    pub fn evaluate_on(&self, vectors: &[MultiVector]) -> Result<MultiVector, CartanError> {
        let comps = self
            .components
            .iter()
            .map(|c| Form::new(&self.space, c.clone())?.evaluate_on(vectors))
            .collect::<Result<Vec<_>, _>>()?;
        MultiVector::vector_field(&self.space, &comps)
    }

    pub(crate) fn same_space(&self, other: &VectorValuedForm) -> Result<(), CartanError> {
        same_space(&self.space, &other.space)
    }
}

pub(crate) fn constant_rows(space: &Arc<CartanChart>, m: &QMatrix) -> Vec<Vec<Element>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| space.constant(m[(i, j)].clone())).collect()).collect()
}

macro_rules! linear_ops {
    ($ty:ident, $field:ident) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                same_space(&self.space, &rhs.space).expect("tensors on different charts");
                $ty { space: self.space.clone(), $field: &self.$field + &rhs.$field }
            }
        }
        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                same_space(&self.space, &rhs.space).expect("tensors on different charts");
                $ty { space: self.space.clone(), $field: &self.$field - &rhs.$field }
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty { space: self.space.clone(), $field: -&self.$field }
            }
        }
    };
}

linear_ops!(Form, value);
linear_ops!(MultiVector, value);

impl Add for &VectorValuedForm {
    type Output = VectorValuedForm;
    fn add(self, rhs: &VectorValuedForm) -> VectorValuedForm {
        self.same_space(rhs).expect("tensors on different charts");
        VectorValuedForm {
            space: self.space.clone(),
            components: self.components.iter().zip(&rhs.components).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &VectorValuedForm {
    type Output = VectorValuedForm;
    fn sub(self, rhs: &VectorValuedForm) -> VectorValuedForm {
        self + &(-rhs)
    }
}

impl Neg for &VectorValuedForm {
    type Output = VectorValuedForm;
    fn neg(self) -> VectorValuedForm {
        self.map_components(|c| -c)
    }
}

impl std::fmt::Display for VectorValuedForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| format!("({c})⊗∂{}", self.space.coord_name(a)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
