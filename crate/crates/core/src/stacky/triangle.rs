use std::collections::BTreeMap;

use super::complex::{GradedMap, LinearComplex};
use super::linear::{blocks, row_map};
use super::StackyError;
use crate::report::{Check, Summary};
use crate::QMatrix;

/// Linear model of two commuting squares over a common base map
/// `base : X → 𝒳`: legs `Y_i → X`, lifts `Y_i → 𝒴_i` and covers
/// `𝒴_i → 𝒳` with `base ∘ leg_i = cover_i ∘ lift_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactTriangleDiagram {
    base: GradedMap,
    legs: [GradedMap; 2],
    lifts: [GradedMap; 2],
    covers: [GradedMap; 2],
}

fn identity(n: usize) -> QMatrix {
    QMatrix::identity(n)
}

fn minus_identity(n: usize) -> QMatrix {
    -&QMatrix::identity(n)
}

impl ExactTriangleDiagram {
    pub fn new(
        base: &GradedMap,
        legs: [GradedMap; 2],
        lifts: [GradedMap; 2],
        covers: [GradedMap; 2],
    ) -> Result<Self, StackyError> {
        let all = std::iter::once(base).chain(&legs).chain(&lifts).chain(&covers);
        for m in all {
            if m.degree() != 0 {
                return Err(StackyError::Shape("diagram maps must have degree zero".into()));
            }
            if !m.is_chain_map() {
                return Err(StackyError::NotAChainMap);
            }
        }
        for i in 0..2 {
            let ok = legs[i].target() == base.source()
                && lifts[i].source() == legs[i].source()
                && covers[i].source() == lifts[i].target()
                && covers[i].target() == base.target();
            if !ok {
                return Err(StackyError::Shape(format!("square {} has mismatched objects", i + 1)));
            }
            let lhs = base.compose(&legs[i])?;
            let rhs = covers[i].compose(&lifts[i])?;
            if lhs != rhs {
                return Err(StackyError::NonCommuting(format!("square {}", i + 1)));
            }
        }
        Ok(ExactTriangleDiagram { base: base.clone(), legs, lifts, covers })
    }

    pub fn base(&self) -> &GradedMap {
        &self.base
    }

    pub fn leg(&self, i: usize) -> &GradedMap {
        &self.legs[i]
    }

    pub fn lift(&self, i: usize) -> &GradedMap {
        &self.lifts[i]
    }

    pub fn cover(&self, i: usize) -> &GradedMap {
        &self.covers[i]
    }

    fn x(&self) -> &LinearComplex {
        self.base.source()
    }

    fn ambient(&self) -> &LinearComplex {
        self.base.target()
    }

    fn y(&self, i: usize) -> &LinearComplex {
        self.legs[i].source()
    }

    fn thick(&self, i: usize) -> &LinearComplex {
        self.lifts[i].target()
    }

    /// `[cover_i, -base] : 𝒴_i ⊕ X → 𝒳`.
    pub fn cover_difference(&self, i: usize) -> GradedMap {
        row_map(&[&self.covers[i], &self.base.scale(&-crate::scalar::int(1))], self.ambient()).expect("shapes")
    }

    /// Tangent complex of `𝒴_i ×_𝒳 X`.
    pub fn cover_fiber(&self, i: usize) -> LinearComplex {
        self.cover_difference(i).fiber().expect("chain map")
    }

    /// `Y_i → 𝒴_i ×_𝒳 X`, `a ↦ (lift a, leg a, 0)`.
    pub fn to_cover_fiber(&self, i: usize) -> GradedMap {
        let y = self.y(i);
        let p = self.cover_fiber(i);
        GradedMap::from_fn(y, &p, 0, |k| {
            let rows = [self.thick(i).dim(k), self.x().dim(k), self.ambient().dim(k - 1)];
            blocks(&rows, &[y.dim(k)], vec![(0, 0, self.lifts[i].component(k)), (1, 0, self.legs[i].component(k))])
        })
        .expect("shapes")
    }

    /// `T_(X/𝒳)[-1]`.
    pub fn base_relative(&self) -> LinearComplex {
        self.base.fiber().expect("chain map").shift(-1)
    }

    /// `T_(Y_i / 𝒴_i ×_𝒳 X)`.
    pub fn leg_relative(&self, i: usize) -> LinearComplex {
        self.to_cover_fiber(i).fiber().expect("chain map")
    }

    /// `[leg_1, -leg_2] : Y_1 ⊕ Y_2 → X`.
    pub fn leg_difference(&self) -> GradedMap {
        row_map(&[&self.legs[0], &self.legs[1].scale(&-crate::scalar::int(1))], self.x()).expect("shapes")
    }

    /// `[cover_1, -cover_2] : 𝒴_1 ⊕ 𝒴_2 → 𝒳`.
    pub fn covers_difference(&self) -> GradedMap {
        row_map(&[&self.covers[0], &self.covers[1].scale(&-crate::scalar::int(1))], self.ambient()).expect("shapes")
    }

    /// `F → 𝓕` on tangent complexes: `(a_1, a_2, x) ↦ (lift_1 a_1, lift_2 a_2, base x)`.
    pub fn comparison(&self) -> GradedMap {
        let source = self.leg_difference().fiber().expect("chain map");
        let target = self.covers_difference().fiber().expect("chain map");
        GradedMap::from_fn(&source, &target, 0, |k| {
            let rows = [self.thick(0).dim(k), self.thick(1).dim(k), self.ambient().dim(k - 1)];
            let cols = [self.y(0).dim(k), self.y(1).dim(k), self.x().dim(k - 1)];
            blocks(
                &rows,
                &cols,
                vec![
                    (0, 0, self.lifts[0].component(k)),
                    (1, 1, self.lifts[1].component(k)),
                    (2, 2, self.base.component(k - 1)),
                ],
            )
        })
        .expect("shapes")
    }

    /// `T_(F/𝓕)`.
    pub fn total_relative(&self) -> LinearComplex {
        self.comparison().fiber().expect("chain map")
    }

    /// First map of the triangle into one summand, `(x, w) ↦ (0; 0, x, -w)`.
    pub fn first_map_component(&self, i: usize) -> GradedMap {
        let a = self.base_relative();
        let b = self.leg_relative(i);
        GradedMap::from_fn(&a, &b, 0, |k| {
            let (nx, nw) = (self.x().dim(k - 1), self.ambient().dim(k - 2));
            let rows = [self.y(i).dim(k), self.thick(i).dim(k - 1), nx, nw];
            blocks(&rows, &[nx, nw], vec![(2, 0, identity(nx)), (3, 1, minus_identity(nw))])
        })
        .expect("shapes")
    }

    pub fn first_map(&self) -> GradedMap {
        let a = self.base_relative();
        let parts = [self.first_map_component(0), self.first_map_component(1)];
        let sum = LinearComplex::sum_of(&[parts[0].target(), parts[1].target()]);
        GradedMap::from_fn(&a, &sum, 0, |k| {
            let rows = [parts[0].target().dim(k), parts[1].target().dim(k)];
            blocks(&rows, &[a.dim(k)], vec![(0, 0, parts[0].component(k)), (1, 0, parts[1].component(k))])
        })
        .expect("shapes")
    }

    /// Second map out of one summand: the first leg enters with a plus sign on
    /// the base coordinates, the second with a minus sign.
    pub fn second_map_component(&self, i: usize) -> GradedMap {
        let b = self.leg_relative(i);
        let c = self.total_relative();
        let s = if i == 0 { identity } else { minus_identity };
        GradedMap::from_fn(&b, &c, 0, |k| {
            let (ny, nt, nx, nw) =
                (self.y(i).dim(k), self.thick(i).dim(k - 1), self.x().dim(k - 1), self.ambient().dim(k - 2));
            let rows = [self.y(0).dim(k), self.y(1).dim(k), nx, self.thick(0).dim(k - 1), self.thick(1).dim(k - 1), nw];
            blocks(
                &rows,
                &[ny, nt, nx, nw],
                vec![(i, 0, identity(ny)), (2, 2, s(nx)), (3 + i, 1, identity(nt)), (5, 3, s(nw))],
            )
        })
        .expect("shapes")
    }

    pub fn second_map(&self) -> GradedMap {
        row_map(&[&self.second_map_component(0), &self.second_map_component(1)], &self.total_relative())
            .expect("shapes")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriangleReport {
    pub first_chain_map: Check,
    pub second_chain_map: Check,
    pub composite_zero: Check,
    pub cone_equivalence: Check,
    pub cohomology: BTreeMap<String, BTreeMap<i32, usize>>,
}

impl Summary for TriangleReport {
    fn checks(&self) -> Vec<(String, Check)> {
        vec![
            ("first_chain_map".into(), self.first_chain_map.clone()),
            ("second_chain_map".into(), self.second_chain_map.clone()),
            ("composite_zero".into(), self.composite_zero.clone()),
            ("cone_equivalence".into(), self.cone_equivalence.clone()),
        ]
    }

    fn details(&self) -> BTreeMap<String, String> {
        self.cohomology.iter().map(|(name, dims)| (name.clone(), format!("{dims:?}"))).collect()
    }
}

/// Certifies that `T_(X/𝒳)[-1] → ⊕ T_(Y_i / 𝒴_i ×_𝒳 X) → T_(F/𝓕)` is
/// distinguished: the composite vanishes and `Cone(u) → T_(F/𝓕)` induced by
/// the second map is a quasi-isomorphism.
pub fn exact_triangle_check(diagram: &ExactTriangleDiagram) -> TriangleReport {
    let u = diagram.first_map();
    let v = diagram.second_map();
    let first = u.is_chain_map();
    let second = v.is_chain_map();
    let composite = v.compose(&u).map(|c| c.is_zero()).unwrap_or(false);
    let cone_equivalence = if first && second && composite {
        let cone = u.cone().expect("chain map");
        let c = diagram.total_relative();
        let a = u.source();
        let w = GradedMap::from_fn(&cone, &c, 0, |k| {
            blocks(&[c.dim(k)], &[v.source().dim(k), a.dim(k + 1)], vec![(0, 0, v.component(k))])
        })
        .expect("shapes");
        Check::verdict(w.is_quasi_iso())
    } else {
        Check::verdict(false)
    };
    let mut cohomology = BTreeMap::new();
    cohomology.insert("base_relative".to_string(), u.source().cohomology_dims());
    cohomology.insert("legs_relative".to_string(), u.target().cohomology_dims());
    cohomology.insert("total_relative".to_string(), v.target().cohomology_dims());
    TriangleReport {
        first_chain_map: Check::verdict(first),
        second_chain_map: Check::verdict(second),
        composite_zero: Check::verdict(composite),
        cone_equivalence,
        cohomology,
    }
}
