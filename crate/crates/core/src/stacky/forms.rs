use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::complex::LinearComplex;
use super::pairing::Pairing;
use super::StackyError;
use crate::algebroid::{ce_differential, CeModel, LieAlgebroid};
use crate::cartan::{d_element, insert, CartanChart, VectorValuedForm};
use crate::report::{Check, Residuals};
use crate::symcore::Degree;
use crate::{random, Element, QMatrix, Rational};

/// Default number of sample points for fiberwise checks.
pub const DEFAULT_SAMPLES: usize = 5;
/// Default seed for sample points.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// `E^-1 → E^0` over the functions of a chart, with the differential as an
/// `rank(E^0) × rank(E^-1)` matrix of functions.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoTermComplex {
    space: Arc<CartanChart>,
    lower: usize,
    upper: usize,
    differential: Vec<Vec<Element>>,
}

impl TwoTermComplex {
    pub fn new(
        space: &Arc<CartanChart>,
        lower: usize,
        upper: usize,
        differential: Vec<Vec<Element>>,
    ) -> Result<Self, StackyError> {
        if differential.len() != upper || differential.iter().any(|r| r.len() != lower) {
            return Err(StackyError::Shape(format!("differential must be {upper}x{lower}")));
        }
        for e in differential.iter().flatten() {
            space.check(e)?;
            if e.degree().is_some_and(|d| d != Degree::ZERO) {
                return Err(StackyError::Shape("differential entries must be functions".into()));
            }
        }
        Ok(TwoTermComplex { space: space.clone(), lower, upper, differential })
    }

    pub fn space(&self) -> &Arc<CartanChart> {
        &self.space
    }

    /// Ranks of `E^-1` and `E^0`.
    pub fn ranks(&self) -> (usize, usize) {
        (self.lower, self.upper)
    }

    pub fn differential(&self) -> &[Vec<Element>] {
        &self.differential
    }

    /// Fiber at a point of the base: a complex in degrees -1, 0.
    pub fn at(&self, point: &HashMap<String, Rational>) -> Result<LinearComplex, StackyError> {
        let d = evaluate_matrix(&self.differential, self.upper, self.lower, point)?;
        LinearComplex::new(-1, vec![self.lower, self.upper], vec![d])
    }

    /// Largest polynomial degree among the entries.
    pub fn degree_bound(&self) -> u32 {
        self.differential.iter().flatten().map(polynomial_degree).max().unwrap_or(0)
    }
}

fn polynomial_degree(e: &Element) -> u32 {
    e.terms().keys().map(|m| m.iter().sum::<u32>()).max().unwrap_or(0)
}

pub(crate) fn evaluate_scalar(e: &Element, point: &HashMap<String, Rational>) -> Result<Rational, StackyError> {
    let known: HashMap<String, Rational> =
        point.iter().filter(|(k, _)| e.chart().position(k).is_some()).map(|(k, v)| (k.clone(), v.clone())).collect();
    let v = e.evaluate(&known).map_err(crate::cartan::CartanError::from)?;
    if v.terms().keys().any(|m| m.iter().any(|&k| k > 0)) {
        return Err(StackyError::Shape("entry does not reduce to a number at the sample point".into()));
    }
    Ok(v.constant_term())
}

fn evaluate_matrix(
    m: &[Vec<Element>],
    rows: usize,
    cols: usize,
    point: &HashMap<String, Rational>,
) -> Result<QMatrix, StackyError> {
    let mut out = QMatrix::zeros(rows, cols);
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            out[(i, j)] = evaluate_scalar(e, point)?;
        }
    }
    Ok(out)
}

/// Tangent complex of the quotient by a Lie algebroid: `A → T_X` via the anchor.
pub fn tangent_complex(a: &LieAlgebroid) -> TwoTermComplex {
    let n = a.space().dim();
    TwoTermComplex::new(a.space(), a.rank(), n, a.anchor().to_vec()).expect("anchor has the right shape")
}

/// `(ω_0, ω_1, …)` on the CE chart, `ω_p` of bidegree `(2+p, n-p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedTwoForm {
    model: CeModel,
    shift: i32,
    components: Vec<Element>,
}

impl ShiftedTwoForm {
    pub fn new(model: &CeModel, shift: i32, components: Vec<Element>) -> Result<Self, StackyError> {
        for (p, c) in components.iter().enumerate() {
            model.space().check(c)?;
            let want = Degree::new(2 + p as i32, shift - p as i32);
            if !c.is_zero() && !c.is_homogeneous_of(want) {
                return Err(StackyError::Shape(format!("component {p} is not of bidegree {want:?}")));
            }
        }
        let mut components = components;
        while components.last().is_some_and(|c| c.is_zero()) {
            components.pop();
        }
        Ok(ShiftedTwoForm { model: model.clone(), shift, components })
    }

    pub fn model(&self) -> &CeModel {
        &self.model
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn component(&self, p: usize) -> Element {
        self.components.get(p).cloned().unwrap_or_else(|| self.model.space().zero())
    }

    pub fn components(&self) -> &[Element] {
        &self.components
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let components = self.components.iter().map(|e| e.scale(c)).collect();
        ShiftedTwoForm::new(&self.model, self.shift, components).expect("same bidegrees")
    }

    /// `d ω_(p-1) + δ ω_p` for every `p` up to one past the last component.
    pub fn closure_residuals(&self) -> Result<Vec<Element>, StackyError> {
        sequence_residuals(&self.model, &self.components, None)
    }

    pub fn closure(&self) -> Result<Check, StackyError> {
        Ok(residual_check(&self.closure_residuals()?))
    }

    /// Symbol `⟨u, v⟩ = ι_v ι_u ω_0` restricted to the zero section, as a
    /// pairing block `(E^(-k-n)) × E^k` of functions on the base.
    pub fn symbol_block(&self, k: i32) -> Vec<Vec<Element>> {
        symbol_block(&self.model, &self.component(0), self.shift, k)
    }

    pub fn pairing_at(&self, point: &HashMap<String, Rational>) -> Result<Pairing, StackyError> {
        pairing_at(&self.model, &self.component(0), self.shift, point)
    }
}

pub(crate) fn residual_check(residuals: &[Element]) -> Check {
    let mut res = Residuals::new();
    for (p, r) in residuals.iter().enumerate() {
        res.push_if(!r.is_zero(), format!("p = {p}"), r);
    }
    res.into_check()
}

/// `d x_(p-1) + δ x_p - target_p`.
pub(crate) fn sequence_residuals(
    model: &CeModel,
    components: &[Element],
    target: Option<&[Element]>,
) -> Result<Vec<Element>, StackyError> {
    let space = model.space();
    let len = components.len().max(target.map_or(0, |t| t.len())) + 1;
    let get = |v: &[Element], p: usize| v.get(p).cloned().unwrap_or_else(|| space.zero());
    let mut out = Vec::with_capacity(len);
    for p in 0..len {
        let mut r = ce_differential(model, &get(components, p))?;
        if p > 0 {
            r = &r + &d_element(space, &get(components, p - 1));
        }
        if let Some(t) = target {
            r = &r - &get(t, p);
        }
        out.push(r);
    }
    Ok(out)
}

/// Basis vector fields of the CE chart: `∂_ξ^a` span `E^-1`, `∂_x^i` span `E^0`.
fn basis_fields(model: &CeModel, k: i32) -> Vec<VectorValuedForm> {
    let space = model.space();
    let n = model.algebroid().space().dim();
    let range = if k == -1 { n..space.dim() } else { 0..n };
    range
        .map(|a| {
            let comps =
                (0..space.dim()).map(|b| if a == b { space.constant(crate::scalar::int(1)) } else { space.zero() });
            VectorValuedForm::new(space, comps.collect()).expect("constant components")
        })
        .collect()
}

fn restrict_to_zero_section(model: &CeModel, e: &Element) -> Element {
    let n = model.algebroid().space().dim();
    let dim = model.space().dim();
    e.filter(|m| m[n..dim].iter().all(|&k| k == 0) && m[dim..].iter().all(|&k| k == 0))
}

pub(crate) fn symbol_block(model: &CeModel, omega: &Element, shift: i32, k: i32) -> Vec<Vec<Element>> {
    let m = -k - shift;
    if !(-1..=0).contains(&k) || !(-1..=0).contains(&m) {
        return Vec::new();
    }
    let (cols, rows) = (basis_fields(model, k), basis_fields(model, m));
    rows.iter()
        .map(|v| cols.iter().map(|u| restrict_to_zero_section(model, &insert(v, &insert(u, omega)))).collect())
        .collect()
}

pub(crate) fn pairing_at(
    model: &CeModel,
    omega: &Element,
    shift: i32,
    point: &HashMap<String, Rational>,
) -> Result<Pairing, StackyError> {
    let a = model.algebroid();
    let complex = tangent_complex(a).at(point)?;
    let mut blocks = BTreeMap::new();
    for k in [-1, 0] {
        let b = symbol_block(model, omega, shift, k);
        if b.is_empty() {
            continue;
        }
        let rows = complex.dim(-k - shift);
        blocks.insert(k, evaluate_matrix(&b, rows, complex.dim(k), point)?);
    }
    Pairing::new(&complex, shift, blocks)
}

/// `(Ω, 0, 0, …)` with `Ω = Σ dξ^a dx^a` on the CE chart of a Poisson algebroid.
pub fn canonical_one_shifted(a: &LieAlgebroid) -> Result<ShiftedTwoForm, StackyError> {
    let base = a.space();
    let n = base.dim();
    let poisson_frame = a.rank() == n && (0..n).all(|i| a.frame()[i] == format!("d{}", base.coord_name(i)));
    if !poisson_frame {
        return Err(StackyError::NotPoissonType);
    }
    let model = CeModel::new(a)?;
    let space = model.space();
    let omega = (0..n).fold(space.zero(), |acc, i| &acc + &(&space.diff(n + i) * &space.diff(i)));
    ShiftedTwoForm::new(&model, 1, vec![omega])
}

/// Deterministic sample points on the base of a model.
pub fn sample_points(space: &CartanChart, seed: u64, count: usize) -> Vec<HashMap<String, Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random::point(&mut rng, space)).collect()
}

/// Result of a fiberwise certification.
pub(crate) fn fiberwise(verdicts: Vec<(HashMap<String, Rational>, bool)>, degree_bound: u32) -> Check {
    let mut res = Residuals::new();
    for (pt, ok) in &verdicts {
        let mut coords: Vec<_> = pt.iter().map(|(k, v)| format!("{k}={v}")).collect();
        coords.sort();
        res.push_if(!ok, format!("point {}", coords.join(",")), "not a quasi-isomorphism");
    }
    res.into_check().with_note("samples", verdicts.len()).with_note("degree_bound", degree_bound)
}

/// `ω_0♭ : T → T∨[n]` as a map of two-term complexes, certified fiberwise.
pub fn check_nondegenerate(omega: &ShiftedTwoForm, t: &TwoTermComplex) -> Result<Check, StackyError> {
    check_nondegenerate_with(omega, t, DEFAULT_SEED, DEFAULT_SAMPLES)
}

pub fn check_nondegenerate_with(
    omega: &ShiftedTwoForm,
    t: &TwoTermComplex,
    seed: u64,
    samples: usize,
) -> Result<Check, StackyError> {
    let a = omega.model().algebroid();
    if t.space() != a.space() || t.ranks() != (a.rank(), a.space().dim()) {
        return Err(StackyError::Shape("tangent complex does not match the form's algebroid".into()));
    }
    let mut verdicts = Vec::new();
    for pt in sample_points(t.space(), seed, samples) {
        let p = omega.pairing_at(&pt)?;
        if p.complex() != &t.at(&pt)? {
            return Err(StackyError::Shape("tangent complex differs from the algebroid's".into()));
        }
        let ok = p.closure().passed && p.flat().is_quasi_iso();
        verdicts.push((pt, ok));
    }
    let symbol_degree = [-1, 0]
        .into_iter()
        .flat_map(|k| omega.symbol_block(k).into_iter().flatten())
        .map(|e| polynomial_degree(&e))
        .max()
        .unwrap_or(0);
    Ok(fiberwise(verdicts, t.degree_bound().max(symbol_degree)))
}
