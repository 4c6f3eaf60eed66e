use std::collections::BTreeMap;
use std::fmt;

use super::StackyError;
use crate::{QMatrix, Rational};

fn minus_one_pow(k: i32) -> Rational {
    Rational::from_integer(if k.rem_euclid(2) == 0 { 1 } else { -1 }.into())
}

/// Bounded cochain complex of finite-dimensional rational vector spaces,
/// `d^k : C^k → C^(k+1)`.
#[derive(Clone, Debug)]
pub struct LinearComplex {
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<QMatrix>,
}

impl LinearComplex {
    /// `dims[i]` sits in degree `lo + i`; `diffs[i]` maps degree `lo + i` to `lo + i + 1`.
    pub fn new(lo: i32, dims: Vec<usize>, diffs: Vec<QMatrix>) -> Result<Self, StackyError> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(StackyError::Shape(format!(
                "{} spaces need {} differentials",
                dims.len(),
                dims.len().saturating_sub(1)
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(StackyError::Shape(format!(
                    "differential in degree {} has the wrong shape",
                    lo + i as i32
                )));
            }
        }
        for (i, w) in diffs.windows(2).enumerate() {
            if !(&w[1] * &w[0]).is_zero() {
                return Err(StackyError::NotAComplex(lo + i as i32));
            }
        }
        Ok(LinearComplex { lo, dims, diffs })
    }

    pub fn zero() -> Self {
        LinearComplex { lo: 0, dims: vec![], diffs: vec![] }
    }

    pub fn concentrated(degree: i32, dim: usize) -> Self {
        LinearComplex { lo: degree, dims: vec![dim], diffs: vec![] }
    }

    /// `C^lo --d--> C^(lo+1)`.
    pub fn two_term(lo: i32, d: QMatrix) -> Self {
        LinearComplex { lo, dims: vec![d.cols(), d.rows()], diffs: vec![d] }
    }

    /// Lowest and highest degrees carrying a nonzero space.
    pub fn support(&self) -> Option<(i32, i32)> {
        let first = self.dims.iter().position(|&d| d > 0)?;
        let last = self.dims.iter().rposition(|&d| d > 0)?;
        Some((self.lo + first as i32, self.lo + last as i32))
    }

    /// Support as an inclusive range, empty for the zero complex.
    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        let (a, b) = self.support().unwrap_or((0, -1));
        a..=b
    }

    pub fn dim(&self, k: i32) -> usize {
        let i = k - self.lo;
        if i < 0 {
            return 0;
        }
        self.dims.get(i as usize).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn d(&self, k: i32) -> QMatrix {
        let i = k - self.lo;
        if i >= 0 {
            if let Some(m) = self.diffs.get(i as usize) {
                return m.clone();
            }
        }
        QMatrix::zeros(self.dim(k + 1), self.dim(k))
    }

    pub fn cohomology_dim(&self, k: i32) -> usize {
        self.dim(k) - self.d(k).rank() - self.d(k - 1).rank()
    }

    pub fn cohomology_dims(&self) -> BTreeMap<i32, usize> {
        self.degrees().map(|k| (k, self.cohomology_dim(k))).filter(|(_, h)| *h > 0).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|k| self.cohomology_dim(k) == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(k) as i64).sum()
    }

    /// Columns representing a basis of `H^k`.
    pub fn cohomology_basis(&self, k: i32) -> QMatrix {
        let cycles = self.d(k).kernel();
        let boundaries = self.d(k - 1).column_basis();
        cycles.complement_in(&boundaries)
    }

    fn build(lo: i32, hi: i32, dim: impl Fn(i32) -> usize, d: impl Fn(i32) -> QMatrix) -> Self {
        if hi < lo {
            return Self::zero();
        }
        let dims = (lo..=hi).map(&dim).collect();
        let diffs = (lo..hi).map(d).collect();
        LinearComplex { lo, dims, diffs }
    }

    fn range(&self) -> (i32, i32) {
        self.support().unwrap_or((0, -1))
    }

    /// `C[n]^k = C^(k+n)` with differential `(-1)^n d`.
    pub fn shift(&self, n: i32) -> Self {
        let (a, b) = self.range();
        let sign = minus_one_pow(n);
        Self::build(a - n, b - n, |k| self.dim(k + n), |k| self.d(k + n).scale(&sign))
    }

    /// `(C∨)^k = (C^-k)*` with `d∨^k = (-1)^(k+1) (d^(-k-1))ᵀ`.
    pub fn dual(&self) -> Self {
        let (a, b) = self.range();
        Self::build(-b, -a, |k| self.dim(-k), |k| self.d(-k - 1).transpose().scale(&minus_one_pow(k + 1)))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::sum_of(&[self, other])
    }

    pub fn sum_of(parts: &[&Self]) -> Self {
        let ranges: Vec<(i32, i32)> = parts.iter().filter_map(|c| c.support()).collect();
        let (Some(lo), Some(hi)) = (ranges.iter().map(|r| r.0).min(), ranges.iter().map(|r| r.1).max()) else {
            return Self::zero();
        };
        Self::build(
            lo,
            hi,
            |k| parts.iter().map(|c| c.dim(k)).sum(),
            |k| {
                let rows: Vec<usize> = parts.iter().map(|c| c.dim(k + 1)).collect();
                let cols: Vec<usize> = parts.iter().map(|c| c.dim(k)).collect();
                let ds: Vec<QMatrix> = parts.iter().map(|c| c.d(k)).collect();
                let blocks: Vec<Vec<Option<&QMatrix>>> =
                    (0..parts.len()).map(|i| (0..parts.len()).map(|j| (i == j).then_some(&ds[i])).collect()).collect();
                QMatrix::block(&rows, &cols, &blocks)
            },
        )
    }
}

impl PartialEq for LinearComplex {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.range(), other.range());
        let lo = a.0.min(b.0);
        let hi = a.1.max(b.1);
        (lo..=hi).all(|k| self.dim(k) == other.dim(k)) && (lo..hi).all(|k| self.d(k) == other.d(k))
    }
}

impl fmt::Display for LinearComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees().map(|k| format!("{}@{k}", self.dim(k))).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" -> "))
        }
    }
}

/// Linear map `C → D` raising degree by `degree`, with `C^k → D^(k+degree)`
/// given by `component(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap {
    source: LinearComplex,
    target: LinearComplex,
    degree: i32,
    comps: BTreeMap<i32, QMatrix>,
}

impl GradedMap {
    pub fn new(
        source: &LinearComplex,
        target: &LinearComplex,
        degree: i32,
        comps: BTreeMap<i32, QMatrix>,
    ) -> Result<Self, StackyError> {
        let mut kept = BTreeMap::new();
        for (k, m) in comps {
            if m.rows() != target.dim(k + degree) || m.cols() != source.dim(k) {
                return Err(StackyError::Shape(format!(
                    "map component in degree {k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(k + degree),
                    source.dim(k)
                )));
            }
            if !m.is_zero() {
                kept.insert(k, m);
            }
        }
        Ok(GradedMap { source: source.clone(), target: target.clone(), degree, comps: kept })
    }

    pub fn from_fn(
        source: &LinearComplex,
        target: &LinearComplex,
        degree: i32,
        f: impl Fn(i32) -> QMatrix,
    ) -> Result<Self, StackyError> {
        let comps = source.degrees().map(|k| (k, f(k))).collect();
        Self::new(source, target, degree, comps)
    }

    pub fn zero(source: &LinearComplex, target: &LinearComplex, degree: i32) -> Self {
        GradedMap { source: source.clone(), target: target.clone(), degree, comps: BTreeMap::new() }
    }

    pub fn identity(c: &LinearComplex) -> Self {
        Self::from_fn(c, c, 0, |k| QMatrix::identity(c.dim(k))).expect("square blocks")
    }

    pub fn source(&self) -> &LinearComplex {
        &self.source
    }

    pub fn target(&self) -> &LinearComplex {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn component(&self, k: i32) -> QMatrix {
        self.comps
            .get(&k)
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.target.dim(k + self.degree), self.source.dim(k)))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap, StackyError> {
        if other.target != self.source {
            return Err(StackyError::Shape("composed maps do not match".into()));
        }
        let e = other.degree;
        Self::from_fn(&other.source, &self.target, e + self.degree, |k| &self.component(k + e) * &other.component(k))
    }

    fn combine(&self, other: &GradedMap, sign: &Rational) -> Result<GradedMap, StackyError> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(StackyError::Shape("maps have different shapes".into()));
        }
        Self::from_fn(&self.source, &self.target, self.degree, |k| &self.component(k) + &other.component(k).scale(sign))
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap, StackyError> {
        self.combine(other, &Rational::from_integer(1.into()))
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap, StackyError> {
        self.combine(other, &Rational::from_integer((-1).into()))
    }

    pub fn scale(&self, c: &Rational) -> GradedMap {
        Self::from_fn(&self.source, &self.target, self.degree, |k| self.component(k).scale(c)).expect("same shape")
    }

    /// `d_D ∘ f - (-1)^degree f ∘ d_C`.
    pub fn boundary(&self) -> GradedMap {
        let e = self.degree;
        let sign = minus_one_pow(e);
        Self::from_fn(&self.source, &self.target, e + 1, |k| {
            &(&self.target.d(k + e) * &self.component(k)) - &(&self.component(k + 1) * &self.source.d(k)).scale(&sign)
        })
        .expect("boundary shape")
    }

    pub fn is_chain_map(&self) -> bool {
        self.degree == 0 && self.boundary().is_zero()
    }

    /// `Cone(f)^k = D^k ⊕ C^(k+1)` with `d(b, a) = (db + f a, -da)`.
    pub fn cone(&self) -> Result<LinearComplex, StackyError> {
        self.require_chain_map()?;
        let (c, t) = (&self.source, &self.target);
        let (lo, hi) = span(&[t.range(), shifted(c.range(), -1)]);
        Ok(LinearComplex::build(
            lo,
            hi,
            |k| t.dim(k) + c.dim(k + 1),
            |k| {
                let neg = -&c.d(k + 1);
                let f = self.component(k + 1);
                let dt = t.d(k);
                QMatrix::block(
                    &[t.dim(k + 1), c.dim(k + 2)],
                    &[t.dim(k), c.dim(k + 1)],
                    &[vec![Some(&dt), Some(&f)], vec![None, Some(&neg)]],
                )
            },
        ))
    }

    /// `Fib(f)^k = C^k ⊕ D^(k-1)` with `d(a, b) = (da, f a - db)`.
    pub fn fiber(&self) -> Result<LinearComplex, StackyError> {
        self.require_chain_map()?;
        let (c, t) = (&self.source, &self.target);
        let (lo, hi) = span(&[c.range(), shifted(t.range(), 1)]);
        Ok(LinearComplex::build(
            lo,
            hi,
            |k| c.dim(k) + t.dim(k - 1),
            |k| {
                let neg = -&t.d(k - 1);
                let f = self.component(k);
                let dc = c.d(k);
                QMatrix::block(
                    &[c.dim(k + 1), t.dim(k)],
                    &[c.dim(k), t.dim(k - 1)],
                    &[vec![Some(&dc), None], vec![Some(&f), Some(&neg)]],
                )
            },
        ))
    }

    fn require_chain_map(&self) -> Result<(), StackyError> {
        if self.is_chain_map() {
            Ok(())
        } else {
            Err(StackyError::NotAChainMap)
        }
    }

    /// Chain map whose cone is acyclic.
    pub fn is_quasi_iso(&self) -> bool {
        self.is_chain_map() && self.cone().map(|c| c.is_acyclic()).unwrap_or(false)
    }

    /// `f∨ : D∨ → C∨` with `(f∨)^k = (f^-k)ᵀ`, for chain maps.
    pub fn dual(&self) -> Result<GradedMap, StackyError> {
        if self.degree != 0 {
            return Err(StackyError::Shape("only degree-zero maps are dualized".into()));
        }
        let (cd, td) = (self.source.dual(), self.target.dual());
        Self::from_fn(&td, &cd, 0, |k| self.component(-k).transpose())
    }

    /// `f[n] : C[n] → D[n]`, for degree-zero maps.
    pub fn shift(&self, n: i32) -> Result<GradedMap, StackyError> {
        if self.degree != 0 {
            return Err(StackyError::Shape("only degree-zero maps are shifted".into()));
        }
        let (cs, ts) = (self.source.shift(n), self.target.shift(n));
        Self::from_fn(&cs, &ts, 0, |k| self.component(k + n))
    }

    /// Matrix of the induced map `H^k(C) → H^k(D)` in the bases of
    /// `cohomology_basis`.
    pub fn on_cohomology(&self, k: i32) -> QMatrix {
        let src = self.source.cohomology_basis(k);
        let tgt_basis = self.target.cohomology_basis(k + self.degree);
        let boundaries = self.target.d(k + self.degree - 1).column_basis();
        let image = &self.component(k) * &src;
        let system = tgt_basis.hstack(&boundaries);
        let coords = system.solve_matrix(&image).expect("image of a cycle is a cycle");
        coords.submatrix(&(0..tgt_basis.cols()).collect::<Vec<_>>(), &(0..src.cols()).collect::<Vec<_>>())
    }
}

fn shifted(r: (i32, i32), by: i32) -> (i32, i32) {
    if r.1 < r.0 {
        r
    } else {
        (r.0 + by, r.1 + by)
    }
}

fn span(ranges: &[(i32, i32)]) -> (i32, i32) {
    let live: Vec<&(i32, i32)> = ranges.iter().filter(|r| r.0 <= r.1).collect();
    match (live.iter().map(|r| r.0).min(), live.iter().map(|r| r.1).max()) {
        (Some(a), Some(b)) => (a, b),
        _ => (0, -1),
    }
}

pub(crate) fn sign(k: i32) -> Rational {
    minus_one_pow(k)
}
