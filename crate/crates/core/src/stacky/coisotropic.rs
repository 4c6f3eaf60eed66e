use std::collections::BTreeMap;

use super::complex::sign;
use super::linear::{blocks, lagrangian_intersection, Intersection, LagrangianReport, LinearLagrangian};
use super::pairing::Pairing;
use super::triangle::{exact_triangle_check, ExactTriangleDiagram, TriangleReport};
use super::StackyError;
use crate::report::{Check, Summary};
use crate::Rational;

/// An [`ExactTriangleDiagram`] over a 1-shifted linear model together with
/// Lagrangian structures on the base map, on both covers, and on the maps
/// `Y_i → 𝒴_i ×_𝒳 X`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoisotropicDiagram {
    pub diagram: ExactTriangleDiagram,
    pub symplectic: Pairing,
    pub base_structure: Pairing,
    pub cover_structures: [Pairing; 2],
    pub leg_structures: [Pairing; 2],
}

impl CoisotropicDiagram {
    /// All structures zero, as happens for constant Poisson models.
    pub fn with_zero_structures(diagram: ExactTriangleDiagram, symplectic: Pairing) -> Self {
        let n = symplectic.shift();
        let d = &diagram;
        let zero = |c: &super::LinearComplex, s| Pairing::zero(c, s);
        CoisotropicDiagram {
            base_structure: zero(d.base().source(), n - 1),
            cover_structures: [zero(d.cover(0).source(), n - 1), zero(d.cover(1).source(), n - 1)],
            leg_structures: [zero(d.leg(0).source(), n - 2), zero(d.leg(1).source(), n - 2)],
            diagram,
            symplectic,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoisotropicReport {
    pub triangle: TriangleReport,
    /// `T_(X/𝒳) → T∨_X` from the base Lagrangian.
    pub left_column: Check,
    /// `T_(Y_i / 𝒴_i ×_𝒳 X) → T∨_(Y_i)[-1]` from the leg Lagrangians.
    pub middle_column: [Check; 2],
    /// The assembled structure on `F → 𝓕`.
    pub right_column: LagrangianReport,
    /// Left and middle quasi-isomorphisms with an exact top row force the right one.
    pub consistency: Check,
    pub ambient: Intersection,
    pub structure: Pairing,
}

impl Summary for CoisotropicReport {
    fn checks(&self) -> Vec<(String, Check)> {
        let mut v = vec![("left_column".to_string(), self.left_column.clone())];
        for (i, c) in self.middle_column.iter().enumerate() {
            v.push((format!("middle_column_{}", i + 1), c.clone()));
        }
        for (name, c) in self.right_column.checks() {
            v.push((format!("right_column.{name}"), c));
        }
        for (name, c) in self.triangle.checks() {
            v.push((format!("triangle.{name}"), c));
        }
        v.push(("consistency".into(), self.consistency.clone()));
        v
    }

    fn details(&self) -> BTreeMap<String, String> {
        let mut d = self.triangle.details();
        for (k, h) in self.structure.complex().cohomology_dims() {
            d.insert(format!("intersection H^{k}"), h.to_string());
        }
        d
    }
}

fn hypothesis(what: &str) -> impl Fn(StackyError) -> StackyError + '_ {
    move |e| StackyError::Hypothesis(format!("{what}: {e}"))
}

fn certified(l: LinearLagrangian, what: &str) -> Result<(LinearLagrangian, LagrangianReport), StackyError> {
    let r = l.certify();
    if r.passed() {
        Ok((l, r))
    } else {
        Err(StackyError::Hypothesis(format!("{what} is not Lagrangian")))
    }
}

/// Certifies that the derived intersection `F = Y_1 ×_X Y_2` maps to
/// `𝓕 = 𝒴_1 ×_𝒳 𝒴_2` as a 0-shifted Lagrangian, with the isotropic structure
/// assembled from the leg structures and the base structure.
pub fn coisotropic_intersection_check(data: &CoisotropicDiagram) -> Result<CoisotropicReport, StackyError> {
    let d = &data.diagram;
    let omega = &data.symplectic;
    let (base, _) = certified(
        LinearLagrangian::new(omega, d.base(), &data.base_structure).map_err(hypothesis("base map"))?,
        "base map",
    )?;
    let mut covers = Vec::new();
    for i in 0..2 {
        let l = LinearLagrangian::new(omega, d.cover(i), &data.cover_structures[i]).map_err(hypothesis("cover"))?;
        covers.push(certified(l, &format!("cover {}", i + 1))?.0);
    }
    let mut middle = Vec::new();
    for i in 0..2 {
        let fiber = lagrangian_intersection(&covers[i], &base).map_err(hypothesis("cover fiber"))?;
        let l = LinearLagrangian::new(&fiber.pairing, &d.to_cover_fiber(i), &data.leg_structures[i])
            .map_err(hypothesis("leg"))?;
        let (_, r) = certified(l, &format!("leg {}", i + 1))?;
        middle.push(r.quasi_isomorphism);
    }
    let ambient = lagrangian_intersection(&covers[0], &covers[1]).map_err(hypothesis("covers"))?;

    let structure = assemble_structure(data)?;
    let comparison = d.comparison();
    let right = LinearLagrangian::new(&ambient.pairing, &comparison, &structure)?;
    let right_column = right.certify();
    let left_column = base.certify().quasi_isomorphism;
    let triangle = exact_triangle_check(d);
    let forced = left_column.passed && middle.iter().all(|c| c.passed) && triangle.passed();
    let consistency = Check::verdict(!forced || right_column.quasi_isomorphism.passed);
    Ok(CoisotropicReport {
        triangle,
        left_column,
        middle_column: [middle[0].clone(), middle[1].clone()],
        right_column,
        consistency,
        ambient,
        structure,
    })
}

/// On `a = (a_1, a_2, x)`, `b = (b_1, b_2, x')` in `T_F`:
/// `γ_1(a_1, b_1) - γ_2(a_2, b_2) - ½η(x, f_1 b_1 + f_2 b_2) - ½(-1)^|a| η(f_1 a_1 + f_2 a_2, x')`
/// with `γ_i` the leg structures and `η` the base structure.
pub fn assemble_structure(data: &CoisotropicDiagram) -> Result<Pairing, StackyError> {
    let d = &data.diagram;
    let n = data.symplectic.shift();
    let tf = d.leg_difference().fiber()?;
    let (y1, y2, x) = (d.leg(0).source(), d.leg(1).source(), d.base().source());
    let eta = &data.base_structure;
    let half = Rational::new(1.into(), 2.into());
    let (f1, f2) = (d.leg(0), d.leg(1));
    Pairing::from_fn(&tf, n - 2, |k| {
        let m = -k - n + 2;
        let rows = [y1.dim(m), y2.dim(m), x.dim(m - 1)];
        let cols = [y1.dim(k), y2.dim(k), x.dim(k - 1)];
        let cross_x = eta.block(k - 1).scale(&-half.clone());
        let cross_b = eta.block(k).scale(&(-half.clone() * sign(k)));
        blocks(
            &rows,
            &cols,
            vec![
                (0, 0, data.leg_structures[0].block(k)),
                (1, 1, -&data.leg_structures[1].block(k)),
                (0, 2, &f1.component(m).transpose() * &cross_x),
                (1, 2, &f2.component(m).transpose() * &cross_x),
                (2, 0, &cross_b * &f1.component(k)),
                (2, 1, &cross_b * &f2.component(k)),
            ],
        )
    })
}
