use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::algebroid::{poisson_algebroid, CeModel, LieAlgebroid};
use crate::cartan::{d_element, insert, CartanChart, MultiVector};
use crate::random;
use crate::report::Summary;
use crate::scalar::int;
use crate::QMatrix;

fn plane() -> Arc<CartanChart> {
    CartanChart::ordinary(&["x", "y"]).unwrap()
}

fn r4() -> Arc<CartanChart> {
    CartanChart::ordinary(&["x1", "y1", "x2", "y2"]).unwrap()
}

fn standard_inverse_poisson(s: &Arc<CartanChart>) -> MultiVector {
    let mut w = QMatrix::zeros(4, 4);
    for k in 0..2 {
        w[(2 * k, 2 * k + 1)] = int(1);
        w[(2 * k + 1, 2 * k)] = int(-1);
    }
    MultiVector::from_constant_bivector(s, &w.inverse().unwrap()).unwrap()
}

fn so3() -> LieAlgebroid {
    let s = CartanChart::ordinary(&["x", "y", "z"]).unwrap();
    let (x, y, z) = (s.coord(0), s.coord(1), s.coord(2));
    let zero = s.zero();
    let m = vec![vec![zero.clone(), z.clone(), -&y], vec![-&z, zero.clone(), x.clone()], vec![y.clone(), -&x, zero]];
    poisson_algebroid(&MultiVector::from_bivector_matrix(&s, &m).unwrap()).unwrap()
}

fn plane_poisson() -> LieAlgebroid {
    let s = plane();
    poisson_algebroid(&MultiVector::from_constant_bivector(&s, &QMatrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap())
        .unwrap()
}

fn origin(names: &[&str]) -> std::collections::HashMap<String, crate::Rational> {
    names.iter().map(|n| (n.to_string(), int(0))).collect()
}

#[test]
fn tangent_complexes_of_basic_algebroids() {
    let s = plane();
    let ab = tangent_complex(&LieAlgebroid::abelian(&s, 3).unwrap());
    assert_eq!(ab.ranks(), (3, 2));
    assert!(ab.differential().iter().flatten().all(|e| e.is_zero()));
    let t = tangent_complex(&LieAlgebroid::tangent(&s).unwrap());
    assert_eq!(t.at(&origin(&["x", "y"])).unwrap().d(-1), QMatrix::identity(2));
}

#[test]
fn poisson_tangent_complex_has_the_inverse_determinant() {
    let s = r4();
    let a = poisson_algebroid(&standard_inverse_poisson(&s)).unwrap();
    let d = tangent_complex(&a).at(&origin(&["x1", "y1", "x2", "y2"])).unwrap().d(-1);
    // det(ω^-1) = 1 / det(ω) = 1 for the standard form
    assert_eq!(d.determinant(), int(1));
    assert!(d.inverse().is_some());
}

#[test]
fn canonical_form_symbol_and_closure() {
    let s = plane();
    let a = poisson_algebroid(&MultiVector::zero(&s).unwrap()).unwrap();
    let omega = canonical_one_shifted(&a).unwrap();
    let pt = origin(&["x", "y"]);
    let p = omega.pairing_at(&pt).unwrap();
    assert_eq!(p.block(-1), QMatrix::identity(2));
    assert_eq!(p.block(0), -&QMatrix::identity(2));
    assert!(omega.closure().unwrap().passed);
    assert!(check_nondegenerate(&omega, &tangent_complex(&a)).unwrap().passed);
}

/// Independent expansion: `d ω_0 = 0` and `δ ω_0 = ±d(ι_Q ω_0)`.
fn cartan_formula_vanishes(omega: &ShiftedTwoForm) -> bool {
    let m = omega.model();
    let w = omega.component(0);
    d_element(m.space(), &w).is_zero() && d_element(m.space(), &insert(m.homological_field(), &w)).is_zero()
}

#[test]
fn canonical_form_is_closed_on_nonconstant_poisson() {
    for a in [poisson_algebroid(&standard_inverse_poisson(&r4())).unwrap(), so3(), plane_poisson()] {
        let omega = canonical_one_shifted(&a).unwrap();
        assert!(cartan_formula_vanishes(&omega));
        let r = omega.closure_residuals().unwrap();
        assert!(r.iter().all(|e| e.is_zero()), "{r:?}");
        assert!(check_nondegenerate(&omega, &tangent_complex(&a)).unwrap().passed);
    }
}

#[test]
fn degenerate_or_foreign_forms_are_detected() {
    let a = so3();
    let omega = canonical_one_shifted(&a).unwrap();
    let zero = omega.scale(&int(0));
    assert!(!check_nondegenerate(&zero, &tangent_complex(&a)).unwrap().passed);
    assert!(matches!(
        canonical_one_shifted(&LieAlgebroid::tangent(&plane()).unwrap()),
        Err(StackyError::NotPoissonType)
    ));
    let other = tangent_complex(&LieAlgebroid::abelian(&plane(), 2).unwrap());
    assert!(matches!(check_nondegenerate(&omega, &other), Err(StackyError::Shape(_))));
    let m = omega.model();
    let wrong_degree = m.space().diff(0);
    assert!(ShiftedTwoForm::new(m, 1, vec![wrong_degree]).is_err());
}

/// `T = (R^r → R^n)` with constant anchor and `ω_0 = Σ M_ai dξ^a dx^i`.
fn constant_model(anchor: &QMatrix, symbol: &QMatrix) -> (ShiftedTwoForm, TwoTermComplex) {
    let (n, r) = (anchor.rows(), anchor.cols());
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let s = CartanChart::ordinary(&refs).unwrap();
    let rho = (0..n).map(|i| (0..r).map(|a| s.constant(anchor[(i, a)].clone())).collect()).collect();
    let a = LieAlgebroid::new(&s, (1..=r).map(|k| format!("e{k}")).collect(), rho, vec![vec![vec![s.zero(); r]; r]; r])
        .unwrap();
    let model = CeModel::new(&a).unwrap();
    let sp = model.space();
    let mut w = sp.zero();
    for a_ in 0..r {
        for i in 0..n {
            w = &w + &(&sp.diff(n + a_) * &sp.diff(i)).scale(&symbol[(a_, i)]);
        }
    }
    (ShiftedTwoForm::new(&model, 1, vec![w]).unwrap(), tangent_complex(&a))
}

fn ranks_oracle(anchor: &QMatrix, symbol: &QMatrix) -> bool {
    // β_-1 = Mᵀ and β_0 = -M by the contraction rule for dξ dx
    let b_low = symbol.transpose();
    let b_top = -symbol;
    let c = LinearComplex::two_term(-1, anchor.clone());
    let p = Pairing::new(&c, 1, [(-1, b_low), (0, b_top)].into_iter().collect()).unwrap();
    let f = p.flat();
    if !f.is_chain_map() {
        return false;
    }
    (-2..=1).all(|k| {
        let r = f.on_cohomology(k).rank();
        r == c.cohomology_dim(k) && r == f.target().cohomology_dim(k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn nondegeneracy_matches_rank_oracle(seed in any::<u64>(), n in 1usize..=3, r in 1usize..=3) {
        let mut rng = random::seeded(seed);
        let anchor = random::matrix(&mut rng, n, r, 2);
        let symbol = random::matrix(&mut rng, r, n, 2);
        let (omega, t) = constant_model(&anchor, &symbol);
        let verdict = check_nondegenerate(&omega, &t).unwrap().passed;
        prop_assert_eq!(verdict, ranks_oracle(&anchor, &symbol));
    }

    #[test]
    fn extra_samples_do_not_change_the_verdict(seed in any::<u64>()) {
        let a = so3();
        let omega = canonical_one_shifted(&a).unwrap().scale(&random::small_integer(&mut random::seeded(seed), 2));
        let t = tangent_complex(&a);
        let base = check_nondegenerate_with(&omega, &t, seed, DEFAULT_SAMPLES).unwrap();
        let bound: usize = base.notes["degree_bound"].parse().unwrap();
        let more = check_nondegenerate_with(&omega, &t, seed, DEFAULT_SAMPLES + bound + 1).unwrap();
        prop_assert_eq!(base.passed, more.passed);
    }
}

#[test]
fn atlas_of_plane_poisson_is_lagrangian() {
    let a = plane_poisson();
    let omega = canonical_one_shifted(&a).unwrap();
    let f = StackMap::atlas(omega.model()).unwrap();
    let r = check_lagrangian(&f, &omega, &IsotropicStructure::zero()).unwrap();
    assert!(r.passed(), "{r:?}");
    let g = r.gamma_flat.unwrap();
    // horizontal map (0, 1) on T ⊕ A and relative differential (1, -P)
    assert_eq!(g.component(0), QMatrix::zeros(2, 2).hstack(&QMatrix::identity(2)));
    let p = QMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
    assert_eq!(g.source().d(0), QMatrix::identity(2).hstack(&-&p));
}

#[test]
fn atlas_of_so3_is_lagrangian() {
    let omega = canonical_one_shifted(&so3()).unwrap();
    let f = StackMap::atlas(omega.model()).unwrap();
    assert!(check_lagrangian(&f, &omega, &IsotropicStructure::zero()).unwrap().passed());
}

#[test]
fn zero_horizontal_map_fails() {
    let a = plane_poisson();
    let omega = canonical_one_shifted(&a).unwrap().scale(&int(0));
    let f = StackMap::atlas(omega.model()).unwrap();
    let r = check_lagrangian(&f, &omega, &IsotropicStructure::zero()).unwrap();
    assert!(r.isotropy.passed && !r.nondegeneracy.passed);
    assert!(r.gamma_flat.unwrap().component(0).is_zero());
}

#[test]
fn point_into_itself() {
    let pt = CartanChart::ordinary(&[]).unwrap();
    let model = CeModel::new(&LieAlgebroid::abelian(&pt, 0).unwrap()).unwrap();
    let omega = ShiftedTwoForm::new(&model, 1, vec![]).unwrap();
    let f = StackMap::new(&model, &model, vec![]).unwrap();
    assert!(check_lagrangian(&f, &omega, &IsotropicStructure::zero()).unwrap().passed());
}

#[test]
fn non_closed_structure_is_rejected() {
    let a = poisson_algebroid(&standard_inverse_poisson(&r4())).unwrap();
    let omega = canonical_one_shifted(&a).unwrap();
    let f = StackMap::atlas(omega.model()).unwrap();
    let s = f.source().space();
    let g = &(&s.coord(2) * &s.diff(0)) * &s.diff(1);
    let gamma = IsotropicStructure::new(&f, 1, vec![g]).unwrap();
    assert!(matches!(check_lagrangian(&f, &omega, &gamma), Err(StackyError::NotIsotropic(_))));
}

#[test]
fn closed_structure_shifts_the_horizontal_map() {
    // γ = c dx dy on the atlas of ∂x∧∂y: on H^0 the map is b ↦ (1 + c) b
    let a = plane_poisson();
    let omega = canonical_one_shifted(&a).unwrap();
    let f = StackMap::atlas(omega.model()).unwrap();
    let s = f.source().space();
    for (c, expected) in [(1, true), (2, true), (-1, false)] {
        let g = (&s.diff(0) * &s.diff(1)).scale(&int(c));
        let gamma = IsotropicStructure::new(&f, 1, vec![g]).unwrap();
        let r = check_lagrangian(&f, &omega, &gamma).unwrap();
        assert_eq!(r.passed(), expected, "c = {c}");
    }
}

#[test]
fn stack_maps_must_intertwine_the_differentials() {
    let a = plane_poisson();
    let model = CeModel::new(&a).unwrap();
    let s = model.space();
    // swapping the fiber coordinates does not commute with δ for this anchor
    let images = vec![s.coord(0), s.coord(1), s.coord(3), s.coord(2)];
    assert!(matches!(StackMap::new(&model, &model, images), Err(StackyError::NotAChainMap)));
    let identity = (0..s.dim()).map(|a| s.coord(a)).collect();
    assert!(StackMap::new(&model, &model, identity).is_ok());
}
