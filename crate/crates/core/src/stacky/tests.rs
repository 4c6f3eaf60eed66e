use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::random;
use crate::report::Summary;
use crate::scalar::int;
use crate::QMatrix;

fn standard_omega(n: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    for k in 0..n / 2 {
        m[(2 * k, 2 * k + 1)] = int(1);
        m[(2 * k + 1, 2 * k)] = int(-1);
    }
    m
}

fn inclusion(source: &LinearComplex, target: &LinearComplex, comps: &[(i32, QMatrix)]) -> GradedMap {
    GradedMap::new(source, target, 0, comps.iter().cloned().collect()).unwrap()
}

/// Lagrangian subspace of `(R^2m, ω)` grown one vector at a time inside the
/// ω-orthogonal of what is already chosen.
fn random_lagrangian_basis(rng: &mut ChaCha8Rng, omega: &QMatrix) -> QMatrix {
    let n = omega.rows();
    let mut basis = QMatrix::zeros(n, 0);
    while basis.cols() < n / 2 {
        let perp = (&basis.transpose() * omega).kernel();
        let coeffs = random::matrix(rng, perp.cols(), 1, 3);
        let v = &perp * &coeffs;
        let grown = basis.hstack(&v);
        if grown.rank() == grown.cols() {
            basis = grown;
        }
    }
    basis
}

/// Symplectic model `(A → T)` of a constant Poisson matrix with the
/// canonical degree-1 pairing.
fn poisson_model(p: &QMatrix) -> Pairing {
    let m = p.rows();
    let v = LinearComplex::two_term(-1, p.clone());
    Pairing::new(&v, 1, BTreeMap::from([(-1, QMatrix::identity(m)), (0, -&QMatrix::identity(m))])).unwrap()
}

/// Conormal Lagrangian `(Ann S → S)` of a coisotropic subspace with tangent
/// basis `s` and annihilator basis `w`.
fn conormal_lagrangian(model: &Pairing, s: &QMatrix, w: &QMatrix) -> LinearLagrangian {
    let p = model.complex().d(-1);
    let left = (&(&s.transpose() * s).inverse().unwrap()) * &s.transpose();
    let dy = &(&left * &p) * w;
    let y = LinearComplex::new(-1, vec![w.cols(), s.cols()], vec![dy]).unwrap();
    let f = inclusion(&y, model.complex(), &[(-1, w.clone()), (0, s.clone())]);
    LinearLagrangian::with_zero_structure(model, &f).unwrap()
}

/// Annihilator basis of a random coisotropic subspace for `p`.
fn random_isotropic_covectors(rng: &mut ChaCha8Rng, p: &QMatrix, count: usize) -> QMatrix {
    let m = p.rows();
    let mut w = QMatrix::zeros(m, 0);
    let mut tries = 0;
    while w.cols() < count && tries < 20 {
        tries += 1;
        let allowed = (&w.transpose() * p).kernel();
        let v = &allowed * &random::matrix(rng, allowed.cols(), 1, 3);
        let grown = w.hstack(&v);
        if grown.rank() == grown.cols() {
            w = grown;
        }
    }
    w
}

/// Induced pairing on cohomology, `H^k × H^(-k-n)`, computed from explicit
/// cohomology representatives.
fn cohomology_pairing_nondegenerate(p: &Pairing) -> bool {
    let c = p.complex();
    let n = p.shift();
    c.degrees().all(|k| {
        let (hk, hm) = (c.cohomology_basis(k), c.cohomology_basis(-k - n));
        if hk.cols() != hm.cols() {
            return false;
        }
        let m = &(&hm.transpose() * &p.block(k)) * &hk;
        m.rows() == 0 || m.determinant() != int(0)
    })
}

#[test]
fn complex_basics() {
    let d = QMatrix::from_i64(&[&[1, 0], &[0, 0]]);
    let c = LinearComplex::two_term(0, d);
    assert_eq!(c.cohomology_dims(), BTreeMap::from([(0, 1), (1, 1)]));
    assert_eq!(c.euler_characteristic(), 0);
    // the double dual differs from the original by the sign automorphism (-1)^k
    let dd = c.dual().dual();
    assert_eq!(dd.d(0), -&c.d(0));
    assert_eq!(dd.cohomology_dims(), c.cohomology_dims());
    assert_eq!(c.shift(3).shift(-3), c);
    assert_eq!(c.shift(1).cohomology_dims(), BTreeMap::from([(-1, 1), (0, 1)]));
    assert_eq!(c.dual().cohomology_dims(), BTreeMap::from([(-1, 1), (0, 1)]));
    assert!(matches!(
        LinearComplex::new(0, vec![1, 1, 1], vec![QMatrix::from_i64(&[&[1]]), QMatrix::from_i64(&[&[1]])]),
        Err(StackyError::NotAComplex(0))
    ));
    assert!(LinearComplex::new(0, vec![2, 1], vec![QMatrix::zeros(2, 2)]).is_err());
    assert!(LinearComplex::zero().is_acyclic());
}

#[test]
fn cones_and_quasi_isomorphisms() {
    let c = LinearComplex::two_term(-1, QMatrix::from_i64(&[&[1, 2], &[0, 0]]));
    let id = GradedMap::identity(&c);
    assert!(id.is_quasi_iso());
    assert!(id.cone().unwrap().is_acyclic());
    assert!(id.fiber().unwrap().is_acyclic());
    let zero = GradedMap::zero(&c, &c, 0);
    assert!(zero.is_chain_map() && !zero.is_quasi_iso());
    // inclusion of cohomology: degree -1 kernel vector into c
    let h = LinearComplex::sum_of(&[&LinearComplex::concentrated(-1, 1), &LinearComplex::concentrated(0, 1)]);
    let incl = inclusion(&h, &c, &[(-1, QMatrix::from_i64(&[&[2], &[-1]])), (0, QMatrix::from_i64(&[&[0], &[1]]))]);
    assert!(incl.is_quasi_iso());
    assert_eq!(incl.on_cohomology(-1).rank(), 1);
    let bad = inclusion(&h, &c, &[(-1, QMatrix::from_i64(&[&[1], &[0]]))]);
    assert!(!bad.is_chain_map());
    assert!(matches!(bad.cone(), Err(StackyError::NotAChainMap)));
}

#[test]
fn fiber_and_cone_have_shifted_cohomology() {
    let mut rng = random::seeded(5);
    let a = LinearComplex::two_term(0, random::matrix(&mut rng, 2, 3, 2));
    let b = LinearComplex::two_term(0, QMatrix::zeros(2, 2));
    let f = GradedMap::new(&a, &b, 0, BTreeMap::from([(0, QMatrix::zeros(2, 3))])).unwrap();
    let cone = f.cone().unwrap();
    let fib = f.fiber().unwrap();
    for k in -2..3 {
        assert_eq!(fib.cohomology_dim(k), cone.cohomology_dim(k - 1));
    }
}

#[test]
fn symplectic_pairing_checks() {
    let p = Pairing::symplectic(&standard_omega(4)).unwrap();
    assert!(p.antisymmetry().passed && p.closure().passed && p.nondegeneracy().passed);
    let mut degenerate = QMatrix::zeros(4, 4);
    degenerate[(0, 1)] = int(1);
    degenerate[(1, 0)] = int(-1);
    let q = Pairing::symplectic(&degenerate).unwrap();
    assert!(q.antisymmetry().passed && !q.nondegeneracy().passed);
    let sym = Pairing::symplectic(&QMatrix::identity(2)).unwrap();
    assert!(!sym.antisymmetry().passed);
    assert!(cohomology_pairing_nondegenerate(&p));
}

#[test]
fn canonical_poisson_model_is_symplectic() {
    let p = QMatrix::from_i64(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
    let model = poisson_model(&p);
    assert!(model.antisymmetry().passed, "{:?}", model.antisymmetry());
    assert!(model.closure().passed);
    assert!(model.nondegeneracy().passed);
    assert!(cohomology_pairing_nondegenerate(&model));
}

#[test]
fn linear_lagrangian_subspaces() {
    let omega = standard_omega(2);
    let v = Pairing::symplectic(&omega).unwrap();
    let line = LinearComplex::concentrated(0, 1);
    let l = LinearLagrangian::with_zero_structure(
        &v,
        &inclusion(&line, v.complex(), &[(0, QMatrix::from_i64(&[&[1], &[2]]))]),
    )
    .unwrap();
    assert!(l.certify().passed());

    let whole = LinearLagrangian::with_zero_structure(&v, &GradedMap::identity(v.complex())).unwrap();
    assert!(!whole.certify().isotropy.passed);

    let v4 = Pairing::symplectic(&standard_omega(4)).unwrap();
    let isotropic_line = LinearLagrangian::with_zero_structure(
        &v4,
        &inclusion(&line, v4.complex(), &[(0, QMatrix::from_i64(&[&[1], &[0], &[0], &[0]]))]),
    )
    .unwrap();
    let r = isotropic_line.certify();
    assert!(r.isotropy.passed && r.chain_map.passed && !r.quasi_isomorphism.passed);
}

#[test]
fn atlas_of_poisson_model_is_lagrangian() {
    let p = QMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
    let model = poisson_model(&p);
    let t = LinearComplex::concentrated(0, 2);
    let atlas =
        LinearLagrangian::with_zero_structure(&model, &inclusion(&t, model.complex(), &[(0, QMatrix::identity(2))]))
            .unwrap();
    let r = atlas.certify();
    assert!(r.passed(), "{r:?}");
    // relative tangent complex (T ⊕ A → T) with differential (1, -P)
    let rel = atlas.relative_tangent();
    let expected = QMatrix::identity(2).hstack(&-&p);
    assert_eq!(rel.d(0), expected);
    // γ♭ = (0, 1) on T ⊕ A
    let flat = atlas.gamma_flat();
    assert_eq!(flat.component(0), QMatrix::zeros(2, 2).hstack(&QMatrix::identity(2)));
}

#[test]
fn self_intersection_of_a_line() {
    let v = Pairing::symplectic(&standard_omega(2)).unwrap();
    let line = LinearComplex::concentrated(0, 1);
    let l = LinearLagrangian::with_zero_structure(
        &v,
        &inclusion(&line, v.complex(), &[(0, QMatrix::from_i64(&[&[1], &[0]]))]),
    )
    .unwrap();
    let x = lagrangian_intersection(&l, &l).unwrap();
    assert!(x.passed(), "{x:?}");
    assert_eq!(x.complex().cohomology_dims(), BTreeMap::from([(0, 1), (1, 1)]));
    assert_eq!(x.pairing.shift(), -1);
    assert!(cohomology_pairing_nondegenerate(&x.pairing));
}

#[test]
fn transverse_lines_meet_in_a_point() {
    let v = Pairing::symplectic(&standard_omega(2)).unwrap();
    let line = LinearComplex::concentrated(0, 1);
    let l1 = LinearLagrangian::with_zero_structure(
        &v,
        &inclusion(&line, v.complex(), &[(0, QMatrix::from_i64(&[&[1], &[0]]))]),
    )
    .unwrap();
    let l2 = LinearLagrangian::with_zero_structure(
        &v,
        &inclusion(&line, v.complex(), &[(0, QMatrix::from_i64(&[&[0], &[1]]))]),
    )
    .unwrap();
    let x = lagrangian_intersection(&l1, &l2).unwrap();
    assert!(x.passed());
    assert!(x.complex().is_acyclic());
}

#[test]
fn intersection_rejects_non_lagrangian_input() {
    let v = Pairing::symplectic(&standard_omega(2)).unwrap();
    let whole = LinearLagrangian::with_zero_structure(&v, &GradedMap::identity(v.complex())).unwrap();
    assert!(matches!(lagrangian_intersection(&whole, &whole), Err(StackyError::NotLagrangian(_))));
}

fn random_poisson(rng: &mut ChaCha8Rng, m: usize) -> QMatrix {
    random::antisymmetric(rng, m, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_zero_shifted_intersections(seed in any::<u64>(), half in 1usize..=3) {
        let mut rng = random::seeded(seed);
        let omega = random::symplectic_form(&mut rng, 2 * half, 2);
        let v = Pairing::symplectic(&omega).unwrap();
        let lag = |rng: &mut ChaCha8Rng| {
            let b = random_lagrangian_basis(rng, &omega);
            let y = LinearComplex::concentrated(0, b.cols());
            LinearLagrangian::with_zero_structure(&v, &inclusion(&y, v.complex(), &[(0, b)])).unwrap()
        };
        let (l1, l2) = (lag(&mut rng), lag(&mut rng));
        prop_assert!(l1.certify().passed());
        let x = lagrangian_intersection(&l1, &l2).unwrap();
        prop_assert!(x.antisymmetry.passed);
        prop_assert!(x.closure.passed);
        prop_assert!(x.nondegeneracy.passed);
        prop_assert!(cohomology_pairing_nondegenerate(&x.pairing));
    }

    #[test]
    fn random_one_shifted_intersections(seed in any::<u64>(), m in 2usize..=4) {
        let mut rng = random::seeded(seed);
        let p = random_poisson(&mut rng, m);
        let model = poisson_model(&p);
        let lag = |rng: &mut ChaCha8Rng| {
            let count = rng.gen_range(0..=m);
            let w = random_isotropic_covectors(rng, &p, count);
            let s = w.transpose().kernel();
            conormal_lagrangian(&model, &s, &w)
        };
        let (l1, l2) = (lag(&mut rng), lag(&mut rng));
        prop_assert!(l1.certify().passed(), "{:?}", l1.certify());
        prop_assert!(l2.certify().passed());
        let x = lagrangian_intersection(&l1, &l2).unwrap();
        prop_assert!(x.passed(), "{:?}", x);
        prop_assert!(cohomology_pairing_nondegenerate(&x.pairing));
    }

    #[test]
    fn gauge_shifted_structures_stay_lagrangian(seed in any::<u64>()) {
        // adding the boundary of a degree -2 map keeps the isotropy equation
        let mut rng = random::seeded(seed);
        let p = random_poisson(&mut rng, 3);
        let model = poisson_model(&p);
        let w = random_isotropic_covectors(&mut rng, &p, 1);
        let s = w.transpose().kernel();
        let l = conormal_lagrangian(&model, &s, &w);
        let y = l.source().clone();
        let target = y.dual().shift(1);
        let comps = y.degrees().map(|d| (d, random::matrix(&mut rng, target.dim(d - 2), y.dim(d), 2))).collect();
        let k = GradedMap::new(&y, &target, -2, comps).unwrap();
        let b = k.boundary();
        let eta = Pairing::new(&y, 0, y.degrees().map(|d| (d, b.component(d))).collect()).unwrap();
        let shifted = LinearLagrangian::new(&model, l.map(), &eta).unwrap();
        prop_assert!(shifted.certify().isotropy.passed);
        prop_assert_eq!(shifted.certify().quasi_isomorphism.passed, l.certify().quasi_isomorphism.passed);
    }
}

/// Atlas `T → (A → T)` of a constant Poisson model.
fn atlas_map(model: &Pairing) -> GradedMap {
    let m = model.complex().dim(0);
    inclusion(&LinearComplex::concentrated(0, m), model.complex(), &[(0, QMatrix::identity(m))])
}

/// Square `S → T`, `S → (Ann S → S)` for a coisotropic subspace.
struct CoisotropicLeg {
    leg: GradedMap,
    lift: GradedMap,
    cover: GradedMap,
}

fn coisotropic_leg(model: &Pairing, s: &QMatrix, w: &QMatrix) -> CoisotropicLeg {
    let cover = conormal_lagrangian(model, s, w).map().clone();
    let y = LinearComplex::concentrated(0, s.cols());
    let x = LinearComplex::concentrated(0, s.rows());
    CoisotropicLeg {
        leg: inclusion(&y, &x, &[(0, s.clone())]),
        lift: inclusion(&y, cover.source(), &[(0, QMatrix::identity(s.cols()))]),
        cover,
    }
}

fn coisotropic_diagram(model: &Pairing, legs: [CoisotropicLeg; 2]) -> CoisotropicDiagram {
    let [a, b] = legs;
    let d = ExactTriangleDiagram::new(&atlas_map(model), [a.leg, b.leg], [a.lift, b.lift], [a.cover, b.cover]).unwrap();
    CoisotropicDiagram::with_zero_structures(d, model.clone())
}

fn coordinate_basis(m: usize, idx: &[usize]) -> QMatrix {
    QMatrix::from_fn(m, idx.len(), |i, j| if i == idx[j] { int(1) } else { int(0) })
}

fn standard_poisson_r4() -> QMatrix {
    standard_omega(4).inverse().unwrap()
}

/// Long exact sequence oracle: `u_* ` and `v_*` compose to zero and
/// `ker v_* = im u_*` in every degree, and `Cone(u)` has the cohomology of
/// the third term.
fn triangle_oracle(d: &ExactTriangleDiagram) -> bool {
    let (u, v) = (d.first_map(), d.second_map());
    let b = u.target();
    let cone = u.cone().unwrap();
    let c = v.target();
    let lo = b.degrees().start().min(c.degrees().start()) - 2;
    let hi = b.degrees().end().max(c.degrees().end()) + 2;
    (lo..=hi).all(|k| {
        let (uk, vk) = (u.on_cohomology(k), v.on_cohomology(k));
        let composite = &vk * &uk;
        composite.is_zero()
            && uk.rank() + vk.rank() == b.cohomology_dim(k)
            && cone.cohomology_dim(k) == c.cohomology_dim(k)
    })
}

fn quasi_iso_by_ranks(f: &GradedMap) -> bool {
    let (s, t) = (f.source(), f.target());
    let lo = s.degrees().start().min(t.degrees().start()) - 1;
    let hi = s.degrees().end().max(t.degrees().end()) + 1;
    (lo..=hi).all(|k| {
        let r = f.on_cohomology(k).rank();
        r == s.cohomology_dim(k) && r == t.cohomology_dim(k)
    })
}

#[test]
fn zero_diagram_is_distinguished() {
    let z = LinearComplex::zero();
    let zm = GradedMap::zero(&z, &z, 0);
    let d =
        ExactTriangleDiagram::new(&zm, [zm.clone(), zm.clone()], [zm.clone(), zm.clone()], [zm.clone(), zm.clone()])
            .unwrap();
    let r = exact_triangle_check(&d);
    assert!(r.passed(), "{r:?}");
}

#[test]
fn identity_lifts_make_the_first_map_an_equivalence() {
    let p = standard_poisson_r4();
    let model = poisson_model(&p);
    let q = atlas_map(&model);
    let mut rng = random::seeded(11);
    let legs: Vec<GradedMap> = (0..2)
        .map(|_| {
            let y = LinearComplex::concentrated(0, 2);
            inclusion(&y, q.source(), &[(0, random::matrix(&mut rng, 4, 2, 3))])
        })
        .collect();
    let lifts: Vec<GradedMap> = legs.iter().map(|f| GradedMap::identity(f.source())).collect();
    let covers: Vec<GradedMap> = legs.iter().map(|f| q.compose(f).unwrap()).collect();
    let d = ExactTriangleDiagram::new(
        &q,
        [legs[0].clone(), legs[1].clone()],
        [lifts[0].clone(), lifts[1].clone()],
        [covers[0].clone(), covers[1].clone()],
    )
    .unwrap();
    for i in 0..2 {
        assert!(d.first_map_component(i).is_quasi_iso());
    }
    assert!(exact_triangle_check(&d).passed());
    assert!(triangle_oracle(&d));
}

#[test]
fn non_commuting_squares_are_rejected() {
    let model = poisson_model(&standard_poisson_r4());
    let q = atlas_map(&model);
    let y = LinearComplex::concentrated(0, 1);
    let leg = inclusion(&y, q.source(), &[(0, coordinate_basis(4, &[0]))]);
    let cover = inclusion(&y, model.complex(), &[(0, coordinate_basis(4, &[1]))]);
    let lift = GradedMap::identity(&y);
    let r = ExactTriangleDiagram::new(&q, [leg.clone(), leg], [lift.clone(), lift], [cover.clone(), cover]);
    assert!(matches!(r, Err(StackyError::NonCommuting(_))));
}

/// `𝒴 = Y ⊕ Z` with `Z = (R^a → R^(a+b))`, `d = [1; 0]`, mapping to the
/// model by a random chain map.
fn random_thickened_leg(rng: &mut ChaCha8Rng, q: &GradedMap, y_dim: usize) -> (GradedMap, GradedMap, GradedMap) {
    let model = q.target();
    let m = model.dim(0);
    let p = model.d(-1);
    let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
    let y = LinearComplex::concentrated(0, y_dim);
    let leg = inclusion(&y, q.source(), &[(0, random::matrix(rng, m, y_dim, 3))]);
    let dz = QMatrix::identity(a).vstack(&QMatrix::zeros(b, a));
    let thick = LinearComplex::new(-1, vec![a, y_dim + a + b], vec![QMatrix::zeros(y_dim, a).vstack(&dz)]).unwrap();
    let h_low = random::matrix(rng, m, a, 3);
    let h_top = q.compose(&leg).unwrap().component(0).hstack(&(&p * &h_low)).hstack(&random::matrix(rng, m, b, 3));
    let cover = inclusion(&thick, model, &[(-1, h_low), (0, h_top)]);
    let lift = inclusion(&y, &thick, &[(0, QMatrix::identity(y_dim).vstack(&QMatrix::zeros(a + b, y_dim)))]);
    (leg, lift, cover)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_triangles_match_the_long_exact_sequence(seed in any::<u64>(), m in 2usize..=4) {
        let mut rng = random::seeded(seed);
        let model = poisson_model(&random_poisson(&mut rng, m));
        let q = atlas_map(&model);
        let (n1, n2) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let (l1, p1, g1) = random_thickened_leg(&mut rng, &q, n1);
        let (l2, p2, g2) = random_thickened_leg(&mut rng, &q, n2);
        let d = ExactTriangleDiagram::new(&q, [l1, l2], [p1, p2], [g1, g2]).unwrap();
        let r = exact_triangle_check(&d);
        prop_assert!(r.passed(), "{:?}", r);
        prop_assert!(triangle_oracle(&d));
    }

    #[test]
    fn random_coisotropic_intersections(seed in any::<u64>(), m in 2usize..=4) {
        let mut rng = random::seeded(seed);
        let p = random_poisson(&mut rng, m);
        let model = poisson_model(&p);
        let legs = [0, 1].map(|_| {
            let count = rng.gen_range(0..=m);
            let w = random_isotropic_covectors(&mut rng, &p, count);
            coisotropic_leg(&model, &w.transpose().kernel(), &w)
        });
        let data = coisotropic_diagram(&model, legs);
        let r = coisotropic_intersection_check(&data).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
        let right = LinearLagrangian::new(&r.ambient.pairing, &data.diagram.comparison(), &r.structure).unwrap();
        prop_assert!(quasi_iso_by_ranks(&right.gamma_flat()));
    }
}

#[test]
fn coordinate_coisotropic_subspaces_of_r4() {
    let p = standard_poisson_r4();
    let model = poisson_model(&p);
    let hyper = coisotropic_leg(&model, &coordinate_basis(4, &[0, 1, 2]), &coordinate_basis(4, &[3]));
    let lag = coisotropic_leg(&model, &coordinate_basis(4, &[0, 2]), &coordinate_basis(4, &[1, 3]));
    let r = coisotropic_intersection_check(&coisotropic_diagram(&model, [hyper, lag])).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn identical_lagrangians_intersect_with_cohomology() {
    let p = standard_poisson_r4();
    let model = poisson_model(&p);
    let leg = || coisotropic_leg(&model, &coordinate_basis(4, &[0, 2]), &coordinate_basis(4, &[1, 3]));
    let data = coisotropic_diagram(&model, [leg(), leg()]);
    let r = coisotropic_intersection_check(&data).unwrap();
    assert!(r.passed(), "{r:?}");
    let h = data.diagram.leg_difference().fiber().unwrap().cohomology_dims();
    assert_eq!(h, BTreeMap::from([(0, 2), (1, 2)]));
}

#[test]
fn legs_that_are_not_lagrangian_fail_the_hypothesis() {
    let p = standard_poisson_r4();
    let model = poisson_model(&p);
    let good = coisotropic_leg(&model, &coordinate_basis(4, &[0, 2]), &coordinate_basis(4, &[1, 3]));
    // a line inside the Lagrangian plane, lifted into the plane's conormal model
    let plane = coisotropic_leg(&model, &coordinate_basis(4, &[0, 2]), &coordinate_basis(4, &[1, 3]));
    let line = LinearComplex::concentrated(0, 1);
    let short = CoisotropicLeg {
        leg: inclusion(&line, plane.leg.target(), &[(0, coordinate_basis(4, &[0]))]),
        lift: inclusion(&line, plane.cover.source(), &[(0, coordinate_basis(2, &[0]))]),
        cover: plane.cover,
    };
    let r = coisotropic_intersection_check(&coisotropic_diagram(&model, [good, short]));
    assert!(matches!(r, Err(StackyError::Hypothesis(_))), "{r:?}");
}

/// Diagram over a base `X = T ⊕ (R → R)` whose structure is the boundary of
/// the antisymmetric degree -1 pairing with top block `top`, with legs
/// `S_i ⊕ (R → R)` so that the base structure pulls back nontrivially.
fn thickened_base_data(p: &QMatrix, top: &QMatrix, legs: [(QMatrix, QMatrix); 2]) -> CoisotropicDiagram {
    let model = poisson_model(p);
    let m = p.rows();
    let mut e = QMatrix::zeros(1, m + 1);
    e[(0, m)] = int(1);
    let x = LinearComplex::new(0, vec![m + 1, 1], vec![e]).unwrap();
    let q = inclusion(&x, model.complex(), &[(0, QMatrix::identity(m).hstack(&QMatrix::zeros(m, 1)))]);
    let potential = Pairing::new(&x, -1, BTreeMap::from([(1, top.clone()), (0, -&top.transpose())])).unwrap();
    let b = potential.as_homotopy().boundary();
    let eta = Pairing::from_fn(&x, 0, |k| b.component(k)).unwrap();

    let leg = |(s, w): &(QMatrix, QMatrix)| {
        let c = coisotropic_leg(&model, s, w);
        let n = s.cols();
        let mut d = QMatrix::zeros(1, n + 1);
        d[(0, n)] = int(1);
        let y = LinearComplex::new(0, vec![n + 1, 1], vec![d]).unwrap();
        let mut f = s.vstack(&QMatrix::zeros(1, n)).hstack(&QMatrix::zeros(m + 1, 1));
        f[(m, n)] = int(1);
        CoisotropicLeg {
            leg: inclusion(&y, &x, &[(0, f), (1, QMatrix::identity(1))]),
            lift: inclusion(&y, c.lift.target(), &[(0, QMatrix::identity(n).hstack(&QMatrix::zeros(n, 1)))]),
            cover: c.cover,
        }
    };
    let [a, c] = [leg(&legs[0]), leg(&legs[1])];
    let d = ExactTriangleDiagram::new(&q, [a.leg, c.leg], [a.lift, c.lift], [a.cover, c.cover]).unwrap();
    let mut data = CoisotropicDiagram::with_zero_structures(d, model);
    data.base_structure = eta;
    for i in 0..2 {
        data.leg_structures[i] = potential.pullback(data.diagram.leg(i)).unwrap();
    }
    data
}

#[test]
fn nonzero_base_structure_enters_the_assembled_structure() {
    let top = QMatrix::from_i64(&[&[1], &[-2], &[0], &[3], &[1]]);
    let legs = [
        (coordinate_basis(4, &[0, 1, 2]), coordinate_basis(4, &[3])),
        (coordinate_basis(4, &[0, 2]), coordinate_basis(4, &[1, 3])),
    ];
    let data = thickened_base_data(&standard_poisson_r4(), &top, legs);
    assert!(!data.base_structure.is_zero() && data.base_structure.antisymmetry().passed);
    assert!(data.leg_structures.iter().all(|s| !s.is_zero()));
    let r = coisotropic_intersection_check(&data).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(!r.structure.is_zero());
    assert!(r.structure.antisymmetry().passed);

    // dropping the base contribution from the assembled structure breaks isotropy
    let mut stripped = data.clone();
    stripped.base_structure = Pairing::zero(data.diagram.base().source(), 0);
    let wrong = assemble_structure(&stripped).unwrap();
    let l = LinearLagrangian::new(&r.ambient.pairing, &data.diagram.comparison(), &wrong).unwrap();
    assert!(!l.certify().isotropy.passed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_thickened_coisotropic_intersections(seed in any::<u64>(), m in 2usize..=4) {
        let mut rng = random::seeded(seed);
        let p = random_poisson(&mut rng, m);
        let top = random::matrix(&mut rng, m + 1, 1, 3);
        let legs = [0, 1].map(|_| {
            let count = rng.gen_range(0..=m);
            let w = random_isotropic_covectors(&mut rng, &p, count);
            (w.transpose().kernel(), w)
        });
        let data = thickened_base_data(&p, &top, legs);
        let r = coisotropic_intersection_check(&data).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
        prop_assert!(r.structure.antisymmetry().passed);
        let right = LinearLagrangian::new(&r.ambient.pairing, &data.diagram.comparison(), &r.structure).unwrap();
        prop_assert!(quasi_iso_by_ranks(&right.gamma_flat()));
    }
}
