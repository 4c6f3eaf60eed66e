use std::collections::{BTreeMap, HashMap};

use num::Complex;

use super::structure::HHStructure;
use super::HolostackError;
use crate::algebroid::CeModel;
use crate::report::{Check, Residuals, Summary};
use crate::stacky::{sample_points, tangent_complex, GradedMap, LinearComplex, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::{CMatrix, ComplexRational, QMatrix, Rational};

fn zero() -> Rational {
    Rational::from_integer(0.into())
}

fn complexify(m: &QMatrix) -> CMatrix {
    m.map(|v| Complex::new(v.clone(), zero()))
}

fn imaginary_unit() -> ComplexRational {
    Complex::new(zero(), Rational::from_integer(1.into()))
}

/// `[[Re, -Im], [Im, Re]]`.
fn realify(m: &CMatrix) -> QMatrix {
    let (r, c) = (m.rows(), m.cols());
    QMatrix::from_fn(2 * r, 2 * c, |i, j| {
        let z = &m[(i % r, j % c)];
        match (i < r, j < c) {
            (true, true) | (false, false) => z.re.clone(),
            (true, false) => -z.im.clone(),
            (false, true) => z.im.clone(),
        }
    })
}

fn block_diag(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let za = CMatrix::zeros(a.rows(), b.cols());
    let zb = CMatrix::zeros(b.rows(), a.cols());
    a.hstack(&za).vstack(&zb.hstack(b))
}

/// Complex two-term algebroid `𝓛 = (L^-1 → L^0)` with constant coefficients,
/// an anchor into the complexified tangent complex `A → T_X`, brackets on the
/// degree-zero frame, and a homotopy `γ : L^0 → A ⊗ C`.
#[derive(Clone, Debug, PartialEq)]
pub struct FoliationCandidate {
    differential: CMatrix,
    anchor_lower: CMatrix,
    anchor_upper: CMatrix,
    structure: Vec<Vec<Vec<ComplexRational>>>,
    homotopy: CMatrix,
}

impl FoliationCandidate {
    /// `structure[k][a][b] = c^k_ab`; `differential` is `dim L^0 × dim L^-1`.
    pub fn new(
        differential: CMatrix,
        anchor_lower: CMatrix,
        anchor_upper: CMatrix,
        structure: Vec<Vec<Vec<ComplexRational>>>,
        homotopy: CMatrix,
    ) -> Result<Self, HolostackError> {
        let (upper, lower) = (differential.rows(), differential.cols());
        let shape = |ok: bool, what: &str| if ok { Ok(()) } else { Err(HolostackError::Shape(what.into())) };
        shape(anchor_lower.cols() == lower, "lower anchor must act on L^-1")?;
        shape(anchor_upper.cols() == upper, "upper anchor must act on L^0")?;
        shape(homotopy.cols() == upper && homotopy.rows() == anchor_lower.rows(), "homotopy must map L^0 to A")?;
        shape(
            structure.len() == upper
                && structure.iter().all(|m| m.len() == upper && m.iter().all(|r| r.len() == upper)),
            "structure constants must be indexed by the L^0 frame",
        )?;
        Ok(FoliationCandidate { differential, anchor_lower, anchor_upper, structure, homotopy })
    }

    /// Descent of `T_X ⊗ C`: `L = (A → T_X) ⊗ C` with identity anchor and
    /// `γ = -i ρ_A⁻¹`. Needs a constant invertible anchor.
    pub fn symplectic_canonical(model: &CeModel) -> Result<Self, HolostackError> {
        let anchor = constant_anchor(model)?;
        let inv = anchor.inverse().ok_or_else(|| HolostackError::Shape("anchor is not invertible".into()))?;
        let (n, r) = (anchor.rows(), anchor.cols());
        let i = imaginary_unit();
        FoliationCandidate::new(
            complexify(&anchor),
            CMatrix::identity(r),
            CMatrix::identity(n),
            vec![vec![vec![ComplexRational::new(zero(), zero()); n]; n]; n],
            complexify(&inv).scale(&-i),
        )
    }

    /// `-i` eigenspaces of constant endomorphisms of `T_X` and `A`, with the
    /// induced differential, abelian bracket and `γ = 0`.
    pub fn eigenspaces(model: &CeModel, tangent: &QMatrix, fiber: &QMatrix) -> Result<Self, HolostackError> {
        let anchor = complexify(&constant_anchor(model)?);
        let i = imaginary_unit();
        let eigen = |m: &QMatrix| (&complexify(m) + &CMatrix::identity(m.rows()).scale(&i)).kernel();
        let upper = eigen(tangent);
        let lower = eigen(fiber);
        let differential = upper
            .solve_matrix(&(&anchor * &lower))
            .ok_or_else(|| HolostackError::Shape("anchor does not preserve the eigenspaces".into()))?;
        let k = upper.cols();
        FoliationCandidate::new(
            differential,
            lower.clone(),
            upper,
            vec![vec![vec![ComplexRational::new(zero(), zero()); k]; k]; k],
            CMatrix::zeros(fiber.rows(), k),
        )
    }

    pub fn conjugate(&self) -> Self {
        FoliationCandidate {
            differential: self.differential.conj(),
            anchor_lower: self.anchor_lower.conj(),
            anchor_upper: self.anchor_upper.conj(),
            structure: self
                .structure
                .iter()
                .map(|m| m.iter().map(|r| r.iter().map(|z| z.conj()).collect()).collect())
                .collect(),
            homotopy: self.homotopy.conj(),
        }
    }

    pub fn differential(&self) -> &CMatrix {
        &self.differential
    }

    pub fn anchor(&self) -> (&CMatrix, &CMatrix) {
        (&self.anchor_lower, &self.anchor_upper)
    }

    pub fn homotopy(&self) -> &CMatrix {
        &self.homotopy
    }

    pub fn with_homotopy(&self, homotopy: CMatrix) -> Result<Self, HolostackError> {
        let mut out = self.clone();
        if homotopy.rows() != self.homotopy.rows() || homotopy.cols() != self.homotopy.cols() {
            return Err(HolostackError::Shape("homotopy shape changed".into()));
        }
        out.homotopy = homotopy;
        Ok(out)
    }

    /// Antisymmetry, Jacobi, and the anchor killing brackets (constant frames commute).
    pub fn axioms(&self) -> Check {
        let c = &self.structure;
        let k = c.len();
        let mut res = Residuals::new();
        for t in 0..k {
            for a in 0..k {
                for b in 0..k {
                    let v = &c[t][a][b] + &c[t][b][a];
                    res.push_if(!num::Zero::is_zero(&v), format!("antisymmetry c^{t}_({a},{b})"), v);
                }
            }
        }
        for t in 0..k {
            for a in 0..k {
                for b in a + 1..k {
                    for e in b + 1..k {
                        let mut v = ComplexRational::new(zero(), zero());
                        for (x, y, z) in [(a, b, e), (b, e, a), (e, a, b)] {
                            for m in 0..k {
                                v += c[m][x][y].clone() * c[t][m][z].clone();
                            }
                        }
                        res.push_if(!num::Zero::is_zero(&v), format!("jacobi^{t}({a},{b},{e})"), v);
                    }
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                let col: Vec<ComplexRational> = (0..k).map(|t| c[t][a][b].clone()).collect();
                let image = self.anchor_upper.apply(&col);
                let nonzero = image.iter().any(|z| !num::Zero::is_zero(z));
                res.push_if(nonzero, format!("anchor [e{a}, e{b}]"), format!("{image:?}"));
            }
        }
        res.into_check()
    }
}

fn constant_anchor(model: &CeModel) -> Result<QMatrix, HolostackError> {
    let a = model.algebroid();
    let t = tangent_complex(a);
    if t.degree_bound() > 0 {
        return Err(HolostackError::Shape("anchor must have constant coefficients".into()));
    }
    let origin: HashMap<String, Rational> =
        (0..a.space().dim()).map(|i| (a.space().coord_name(i).to_string(), zero())).collect();
    Ok(t.at(&origin).map_err(|e| HolostackError::Shape(e.to_string()))?.d(-1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoliationReport {
    /// Bracket axioms of `𝓛` and of its conjugate.
    pub axioms: Check,
    /// `ρ` commutes with the differentials at every sample point.
    pub anchor_chain_map: Check,
    /// `ρ ⊕ ρ̄ : 𝓛 ⊕ 𝓛̄ → T ⊗ C` is a quasi-isomorphism at every sample point.
    pub quasi_isomorphism: Check,
    /// `ρ∘(-i) - 𝓘₁∘ρ = dγ + γd` at every sample point.
    pub square: Check,
}

impl Summary for FoliationReport {
    fn checks(&self) -> Vec<(String, Check)> {
        vec![
            ("axioms".into(), self.axioms.clone()),
            ("anchor_chain_map".into(), self.anchor_chain_map.clone()),
            ("quasi_isomorphism".into(), self.quasi_isomorphism.clone()),
            ("square".into(), self.square.clone()),
        ]
    }
}

fn point_label(pt: &HashMap<String, Rational>) -> String {
    let mut coords: Vec<_> = pt.iter().map(|(k, v)| format!("{k}={v}")).collect();
    coords.sort();
    format!("point {}", coords.join(","))
}

/// Blocks of `𝓘₁` on `T_X` and on `A` at a base point, on the zero section.
fn complex_blocks(h: &HHStructure, pt: &HashMap<String, Rational>) -> Result<(QMatrix, QMatrix), HolostackError> {
    let s = h.model().space();
    let n = h.model().algebroid().space().dim();
    let m = h.complex_part(1).matrix();
    let mut full = QMatrix::zeros(s.dim(), s.dim());
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let v = e
                .filter(|mono| mono[n..s.dim()].iter().all(|&k| k == 0))
                .evaluate(pt)
                .map_err(crate::cartan::CartanError::from)?;
            if v.terms().keys().any(|mono| mono.iter().any(|&k| k > 0)) {
                return Err(HolostackError::Shape("I_1 does not reduce to numbers at a sample point".into()));
            }
            full[(i, j)] = v.constant_term();
        }
    }
    let (tan, fib): (Vec<usize>, Vec<usize>) = ((0..n).collect(), (n..s.dim()).collect());
    Ok((full.submatrix(&tan, &tan), full.submatrix(&fib, &fib)))
}

pub fn check_foliation(f: &FoliationCandidate, h: &HHStructure) -> Result<FoliationReport, HolostackError> {
    check_foliation_with(f, h, DEFAULT_SEED, DEFAULT_SAMPLES)
}

pub fn check_foliation_with(
    f: &FoliationCandidate,
    h: &HHStructure,
    seed: u64,
    samples: usize,
) -> Result<FoliationReport, HolostackError> {
    let a = h.model().algebroid();
    let (n, r) = (a.space().dim(), a.rank());
    if f.anchor_upper.rows() != n || f.anchor_lower.rows() != r {
        return Err(HolostackError::Shape(format!("anchor must land in a tangent complex of ranks ({r}, {n})")));
    }
    let conj = f.conjugate();
    let mut axioms = f.axioms();
    if !conj.axioms().passed {
        axioms.passed = false;
    }
    let tangent = tangent_complex(a);
    let i = imaginary_unit();
    let (mut chain, mut quasi, mut square) = (Residuals::new(), Residuals::new(), Residuals::new());
    for pt in sample_points(a.space(), seed, samples) {
        let label = point_label(&pt);
        let t = tangent.at(&pt).map_err(|e| HolostackError::Shape(e.to_string()))?;
        let dt = complexify(&t.d(-1));

        let lhs = &f.anchor_upper * &f.differential;
        let rhs = &dt * &f.anchor_lower;
        chain.push_if(lhs != rhs, label.clone(), &lhs - &rhs);

        let sum_d = block_diag(&f.differential, &conj.differential);
        let source = LinearComplex::new(-1, vec![2 * sum_d.cols(), 2 * sum_d.rows()], vec![realify(&sum_d)])
            .map_err(|e| HolostackError::Shape(e.to_string()))?;
        let target = LinearComplex::new(-1, vec![2 * r, 2 * n], vec![realify(&dt)])
            .map_err(|e| HolostackError::Shape(e.to_string()))?;
        let comps = BTreeMap::from([
            (-1, realify(&f.anchor_lower.hstack(&conj.anchor_lower))),
            (0, realify(&f.anchor_upper.hstack(&conj.anchor_upper))),
        ]);
        let verdict = GradedMap::new(&source, &target, 0, comps).map(|m| m.is_chain_map() && m.is_quasi_iso());
        quasi.push_if(!verdict.unwrap_or(false), label.clone(), "not a quasi-isomorphism");

        let (tan, fib) = complex_blocks(h, &pt)?;
        let minus_i = -i.clone();
        let upper = &(&f.anchor_upper.scale(&minus_i) - &(&complexify(&tan) * &f.anchor_upper)) - &(&dt * &f.homotopy);
        let lower = &(&f.anchor_lower.scale(&minus_i) - &(&complexify(&fib) * &f.anchor_lower))
            - &(&f.homotopy * &f.differential);
        square.push_if(!upper.is_zero(), format!("{label} degree 0"), &upper);
        square.push_if(!lower.is_zero(), format!("{label} degree -1"), &lower);
    }
    let note = |c: Check| c.with_note("samples", samples).with_note("degree_bound", tangent.degree_bound());
    Ok(FoliationReport {
        axioms,
        anchor_chain_map: note(chain.into_check()),
        quasi_isomorphism: note(quasi.into_check()),
        square: note(square.into_check()),
    })
}
