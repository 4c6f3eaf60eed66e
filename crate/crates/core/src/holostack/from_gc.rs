use std::collections::BTreeMap;

use super::structure::{check_hhs, delta, HHStructure, HhsReport};
use super::HolostackError;
use crate::algebroid::{poisson_algebroid, CeModel};
use crate::cartan::{fn_bracket, VectorValuedForm};
use crate::gencomplex::{gc_check, GCStructure};
use crate::report::Summary;
use crate::scalar::rat;
use crate::symcore::{Degree, Side};
use crate::{Element, QMatrix, Rational};

/// Output of [`hhs_from_gc`]. `second_order` is candidate data from the
/// linear solve; `unsolved` lists the equation components it could not meet.
#[derive(Clone, Debug, PartialEq)]
pub struct GcDerivation {
    pub structure: HHStructure,
    pub second_order: VectorValuedForm,
    pub solved: bool,
    pub unsolved: Vec<String>,
    pub ansatz_degree: u32,
    pub report: HhsReport,
}

fn poly_degree(e: &Element) -> u32 {
    e.terms().keys().map(|m| m.iter().sum::<u32>()).max().unwrap_or(0)
}

/// Exponent vectors in `n` variables of total degree at most `d`.
fn exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for mut rest in exponents(n - 1, d - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Builds `A = T*X` with anchor `P#`, `𝓘₁` the cotangent lift of `I`
/// (`I ⊕ ᵗI` for constant `I`), `𝓠₁ = Q`, and solves
/// `δ𝓘₂ = -½[𝓘₁, 𝓘₁]_FN` for `𝓘₂` with polynomial coefficients.
pub fn hhs_from_gc(j: &GCStructure) -> Result<GcDerivation, HolostackError> {
    let gc = gc_check(j)?;
    if !gc.passed() {
        let first = gc.checks().into_iter().find(|(_, c)| !c.passed).map(|(n, _)| n).unwrap_or_default();
        return Err(HolostackError::NotGeneralizedComplex(first));
    }
    let model = CeModel::new(&poisson_algebroid(&j.bivector())?)?;
    let s = model.space();
    let n = j.space().dim();
    let lift = |e: &Element| model.lift(e);

    let mut first = vec![s.zero(); 2 * n];
    let mut homotopy = vec![s.zero(); 2 * n];
    for a in 0..n {
        for b in 0..n {
            first[a] = &first[a] + &(&lift(&j.i_block()[a][b])? * &s.diff(b));
            first[n + a] = &first[n + a] + &(&lift(&j.i_block()[b][a])? * &s.diff(n + b));
            homotopy[n + a] = &homotopy[n + a] + &(&lift(&j.q_block()[a][b])? * &s.diff(b));
            // cotangent lift: ξ_k (∂_b I^k_a - ∂_a I^k_b) dx^b, zero for constant I
            for k in 0..n {
                let curl = &j.i_block()[k][b].derive_at(a, Side::Left) - &j.i_block()[k][a].derive_at(b, Side::Left);
                first[n + a] = &first[n + a] - &(&(&s.coord(n + k) * &lift(&curl)?) * &s.diff(b));
            }
        }
    }
    let first = VectorValuedForm::new(s, first)?;
    let homotopy = VectorValuedForm::new(s, homotopy)?;

    let data = [j.i_block(), j.p_block(), j.q_block()];
    let ansatz_degree = data.iter().flat_map(|m| m.iter().flatten()).map(poly_degree).max().unwrap_or(0) + 1;
    let target = fn_bracket(&first, &first)?.scale(&rat(-1, 2));
    let (second_order, solved) = solve_second_order(&model, &target, ansatz_degree)?;

    let structure = HHStructure::new(&model, vec![first, second_order.clone()], vec![homotopy])?;
    let report = check_hhs(&structure)?;
    let mut unsolved = Vec::new();
    if !solved {
        let want = Degree::new(2, 0);
        for r in &report.eq2.residuals {
            if r.location.starts_with(&want.to_string()) {
                unsolved.push(format!("eq2 {}", r.location));
            }
        }
    }
    Ok(GcDerivation { structure, second_order, solved, unsolved, ansatz_degree, report })
}

/// Linear solve of `δK = target` over `K = Σ f_a,ij(x) dx^i dx^j ∂ξ_a`
/// with `deg f ≤ degree`. Returns zero and `false` when no solution exists.
fn solve_second_order(
    model: &CeModel,
    target: &VectorValuedForm,
    degree: u32,
) -> Result<(VectorValuedForm, bool), HolostackError> {
    let s = model.space();
    let n = model.algebroid().space().dim();
    let r = model.algebroid().rank();
    let zero = VectorValuedForm::zero(s);
    if n < 2 || r == 0 || target.is_zero() {
        return Ok((zero, target.is_zero()));
    }
    let monomial =
        |e: &[u32]| e.iter().enumerate().fold(s.constant(rat(1, 1)), |acc, (i, &k)| &acc * &s.coord(i).pow(k));
    let mut basis = Vec::new();
    for a in 0..r {
        for i in 0..n {
            for k in i + 1..n {
                for e in exponents(n, degree) {
                    let mut comps = vec![s.zero(); s.dim()];
                    comps[n + a] = &(&monomial(&e) * &s.diff(i)) * &s.diff(k);
                    basis.push(VectorValuedForm::new(s, comps)?);
                }
            }
        }
    }
    let images: Vec<VectorValuedForm> = basis.iter().map(|b| delta(model, b)).collect::<Result<_, _>>()?;
    let mut rows: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    let mut key = |a: usize, m: &Vec<u32>| {
        let next = rows.len();
        *rows.entry((a, m.clone())).or_insert(next)
    };
    let mut entries = Vec::new();
    for (col, img) in images.iter().enumerate() {
        for (a, c) in img.components().iter().enumerate() {
            for (m, v) in c.terms() {
                entries.push((key(a, m), col, v.clone()));
            }
        }
    }
    let mut rhs_entries = Vec::new();
    for (a, c) in target.components().iter().enumerate() {
        for (m, v) in c.terms() {
            rhs_entries.push((key(a, m), v.clone()));
        }
    }
    let mut mat = QMatrix::zeros(rows.len(), basis.len());
    for (i, col, v) in entries {
        mat[(i, col)] = v;
    }
    let mut rhs = vec![Rational::from_integer(0.into()); rows.len()];
    for (i, v) in rhs_entries {
        rhs[i] = v;
    }
    match mat.solve(&rhs) {
        Some(x) => {
            let k = basis.iter().zip(&x).fold(zero, |acc, (b, c)| &acc + &b.scale(c));
            Ok((k, true))
        }
        None => Ok((zero, false)),
    }
}
