use std::collections::BTreeMap;

use super::complex::{sign, GradedMap, LinearComplex};
use super::pairing::Pairing;
use super::StackyError;
use crate::report::{Check, Residuals, Summary};
use crate::{QMatrix, Rational};

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Assembles a matrix from blocks placed at `(row block, column block)`.
pub(crate) fn blocks(rows: &[usize], cols: &[usize], entries: Vec<(usize, usize, QMatrix)>) -> QMatrix {
    let mut grid: Vec<Vec<Option<&QMatrix>>> = vec![vec![None; cols.len()]; rows.len()];
    for (r, c, m) in &entries {
        grid[*r][*c] = Some(m);
    }
    QMatrix::block(rows, cols, &grid)
}

/// Chain map from a direct sum `C_1 ⊕ .. ⊕ C_m` into `D` given by its pieces.
pub(crate) fn row_map(parts: &[&GradedMap], target: &LinearComplex) -> Result<GradedMap, StackyError> {
    let sources: Vec<&LinearComplex> = parts.iter().map(|p| p.source()).collect();
    let sum = LinearComplex::sum_of(&sources);
    GradedMap::from_fn(&sum, target, 0, |k| {
        let cols: Vec<usize> = sources.iter().map(|c| c.dim(k)).collect();
        let entries = parts.iter().enumerate().map(|(j, p)| (0, j, p.component(k))).collect();
        blocks(&[target.dim(k)], &cols, entries)
    })
}

/// Isotropic data for a map `f : Y → V` into a degree-`n` pairing: a
/// degree-`(n-1)` pairing on `Y` whose homotopy `h` satisfies
/// `dh + hd + f∨ β♭ f = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearLagrangian {
    target: Pairing,
    map: GradedMap,
    structure: Pairing,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianReport {
    pub isotropy: Check,
    pub chain_map: Check,
    pub quasi_isomorphism: Check,
}

impl Summary for LagrangianReport {
    fn checks(&self) -> Vec<(String, Check)> {
        vec![
            ("isotropy".into(), self.isotropy.clone()),
            ("chain_map".into(), self.chain_map.clone()),
            ("quasi_isomorphism".into(), self.quasi_isomorphism.clone()),
        ]
    }
}

impl LinearLagrangian {
    pub fn new(target: &Pairing, map: &GradedMap, structure: &Pairing) -> Result<Self, StackyError> {
        if map.target() != target.complex() || map.degree() != 0 {
            return Err(StackyError::Shape("map does not land in the symplectic complex".into()));
        }
        if !map.is_chain_map() {
            return Err(StackyError::NotAChainMap);
        }
        if structure.complex() != map.source() || structure.shift() != target.shift() - 1 {
            return Err(StackyError::Shape("isotropic structure must be a pairing of degree n-1 on the source".into()));
        }
        Ok(LinearLagrangian { target: target.clone(), map: map.clone(), structure: structure.clone() })
    }

    /// Zero structure, e.g. for inclusions of linear Lagrangian subspaces.
    pub fn with_zero_structure(target: &Pairing, map: &GradedMap) -> Result<Self, StackyError> {
        Self::new(target, map, &Pairing::zero(map.source(), target.shift() - 1))
    }

    pub fn target(&self) -> &Pairing {
        &self.target
    }

    pub fn map(&self) -> &GradedMap {
        &self.map
    }

    pub fn structure(&self) -> &Pairing {
        &self.structure
    }

    pub fn source(&self) -> &LinearComplex {
        self.map.source()
    }

    /// `f∨[n] ∘ β♭ : V → Y∨[n]`.
    pub fn pulled_flat(&self) -> GradedMap {
        let n = self.target.shift();
        let dual = self.map.dual().expect("degree zero").shift(n).expect("degree zero");
        dual.compose(&self.target.flat()).expect("matching complexes")
    }

    pub fn isotropy_defect(&self) -> GradedMap {
        let h = self.structure.as_homotopy();
        let pulled = self.pulled_flat().compose(&self.map).expect("matching complexes");
        h.boundary().add(&pulled).expect("same shape")
    }

    /// `T_(Y/V) = Fib(f)`.
    pub fn relative_tangent(&self) -> LinearComplex {
        self.map.fiber().expect("chain map")
    }

    /// `(a, b) ↦ h(a) + f∨β♭(b)` on `Fib(f) → Y∨[n-1]`.
    pub fn gamma_flat(&self) -> GradedMap {
        let n = self.target.shift();
        let y = self.source();
        let v = self.target.complex();
        let fib = self.relative_tangent();
        let target = y.dual().shift(n - 1);
        let g = self.pulled_flat();
        GradedMap::from_fn(&fib, &target, 0, |k| {
            blocks(
                &[target.dim(k)],
                &[y.dim(k), v.dim(k - 1)],
                vec![(0, 0, self.structure.block(k)), (0, 1, g.component(k - 1))],
            )
        })
        .expect("gamma flat shapes")
    }

    pub fn certify(&self) -> LagrangianReport {
        let defect = self.isotropy_defect();
        let mut res = Residuals::new();
        for k in self.source().degrees() {
            let c = defect.component(k);
            res.push_if(!c.is_zero(), format!("degree {k}"), &c);
        }
        let isotropy = res.into_check();
        if !isotropy.passed {
            return LagrangianReport {
                isotropy,
                chain_map: Check::verdict(false),
                quasi_isomorphism: Check::verdict(false),
            };
        }
        let flat = self.gamma_flat();
        let chain = flat.is_chain_map();
        let mut qi = Check::verdict(chain && flat.is_quasi_iso());
        for (k, h) in self.relative_tangent().cohomology_dims() {
            qi = qi.with_note(format!("H^{k}(relative)"), h);
        }
        LagrangianReport { isotropy, chain_map: Check::verdict(chain), quasi_isomorphism: qi }
    }
}

/// Derived intersection `Y_1 ×_V Y_2` of two Lagrangians in one linear model.
#[derive(Clone, Debug, PartialEq)]
pub struct Intersection {
    pub difference: GradedMap,
    pub pairing: Pairing,
    pub antisymmetry: Check,
    pub closure: Check,
    pub nondegeneracy: Check,
}

impl Summary for Intersection {
    fn checks(&self) -> Vec<(String, Check)> {
        vec![
            ("antisymmetry".into(), self.antisymmetry.clone()),
            ("closure".into(), self.closure.clone()),
            ("nondegeneracy".into(), self.nondegeneracy.clone()),
        ]
    }

    fn details(&self) -> BTreeMap<String, String> {
        let c = self.pairing.complex();
        let mut d = BTreeMap::new();
        d.insert("complex".into(), c.to_string());
        d.insert("shift".into(), self.pairing.shift().to_string());
        for (k, h) in c.cohomology_dims() {
            d.insert(format!("H^{k}"), h.to_string());
        }
        d
    }
}

impl Intersection {
    pub fn complex(&self) -> &LinearComplex {
        self.pairing.complex()
    }
}

/// `T_F = Fib(f_1 - f_2)` with the degree-`(n-1)` pairing
/// `η_1(a_1, b_1) - η_2(a_2, b_2) - ½β(u, f_1 b_1 + f_2 b_2) - ½(-1)^|a| β(f_1 a_1 + f_2 a_2, w)`
/// on `a = (a_1, a_2, u)`, `b = (b_1, b_2, w)`.
pub fn lagrangian_intersection(l1: &LinearLagrangian, l2: &LinearLagrangian) -> Result<Intersection, StackyError> {
    if l1.target != l2.target {
        return Err(StackyError::Shape("Lagrangians live in different symplectic models".into()));
    }
    for (i, l) in [l1, l2].into_iter().enumerate() {
        let r = l.certify();
        if !r.passed() {
            return Err(StackyError::NotLagrangian(format!("input {}", i + 1)));
        }
    }
    let beta = &l1.target;
    let n = beta.shift();
    let v = beta.complex();
    let (y1, y2) = (l1.source(), l2.source());
    let difference = row_map(&[&l1.map, &l2.map.scale(&sign(1))], v)?;
    let tf = difference.fiber()?;
    let (f1, f2) = (&l1.map, &l2.map);
    let pairing = Pairing::from_fn(&tf, n - 1, |k| {
        let m = -k - n + 1;
        let rows = [y1.dim(m), y2.dim(m), v.dim(m - 1)];
        let cols = [y1.dim(k), y2.dim(k), v.dim(k - 1)];
        let cross_u = beta.block(k - 1).scale(&-half());
        let cross_w = beta.block(k).scale(&(-half() * sign(k)));
        blocks(
            &rows,
            &cols,
            vec![
                (0, 0, l1.structure.block(k)),
                (1, 1, -&l2.structure.block(k)),
                (0, 2, &f1.component(m).transpose() * &cross_u),
                (1, 2, &f2.component(m).transpose() * &cross_u),
                (2, 0, &cross_w * &f1.component(k)),
                (2, 1, &cross_w * &f2.component(k)),
            ],
        )
    })?;
    Ok(Intersection {
        difference,
        antisymmetry: pairing.antisymmetry(),
        closure: pairing.closure(),
        nondegeneracy: pairing.nondegeneracy(),
        pairing,
    })
}
