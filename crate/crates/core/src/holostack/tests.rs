use std::collections::HashMap;
use std::sync::Arc;

use num::Complex;
use proptest::prelude::*;

use super::*;
use crate::algebroid::{poisson_algebroid, CeModel};
use crate::cartan::{d_element, CartanChart, Conventions, DeltaTwist, MultiVector, VectorValuedForm};
use crate::gencomplex::GCStructure;
use crate::random;
use crate::report::Summary;
use crate::scalar::{int, rat};
use crate::{CMatrix, Element, QMatrix, Rational};

fn chart(n: usize) -> Arc<CartanChart> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    CartanChart::ordinary(&refs).unwrap()
}

fn poisson_model(p: &QMatrix) -> CeModel {
    let s = chart(p.rows());
    CeModel::new(&poisson_algebroid(&MultiVector::from_constant_bivector(&s, p).unwrap()).unwrap()).unwrap()
}

/// `Σ t[a][b] dx^b ∂x^a + Σ f[a][b] dξ_b ∂ξ_a`.
fn diagonal_form(m: &CeModel, tangent: &QMatrix, fiber: &QMatrix) -> VectorValuedForm {
    let s = m.space();
    let n = tangent.rows();
    let mut c = vec![s.zero(); 2 * n];
    for a in 0..n {
        for b in 0..n {
            c[a] = &c[a] + &s.diff(b).scale(&tangent[(a, b)]);
            c[n + a] = &c[n + a] + &s.diff(n + b).scale(&fiber[(a, b)]);
        }
    }
    VectorValuedForm::new(s, c).unwrap()
}

/// `Σ q[a][b] dx^b ∂ξ_a`.
fn tangent_to_fiber(m: &CeModel, q: &QMatrix) -> VectorValuedForm {
    let s = m.space();
    let n = q.rows();
    let mut c = vec![s.zero(); 2 * n];
    for a in 0..n {
        for b in 0..n {
            c[n + a] = &c[n + a] + &s.diff(b).scale(&q[(a, b)]);
        }
    }
    VectorValuedForm::new(s, c).unwrap()
}

fn constant_matrix(k: &VectorValuedForm) -> QMatrix {
    let m = k.matrix();
    QMatrix::from_fn(m.len(), m.len(), |i, j| {
        assert!(m[i][j].terms().keys().all(|mono| mono.iter().all(|&e| e == 0)), "non-constant entry");
        m[i][j].constant_term()
    })
}

fn block_diag(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let za = QMatrix::zeros(a.rows(), b.cols());
    let zb = QMatrix::zeros(b.rows(), a.cols());
    a.hstack(&za).vstack(&zb.hstack(b))
}

fn standard_symplectic(n: usize) -> QMatrix {
    let mut w = QMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        w[(2 * k, 2 * k + 1)] = int(1);
        w[(2 * k + 1, 2 * k)] = int(-1);
    }
    w
}

fn rotation() -> QMatrix {
    QMatrix::from_i64(&[&[0, -1], &[1, 0]])
}

#[test]
fn delta_of_homotopy_matches_block_oracle() {
    // δ(Σ q_ab dx^b ∂ξ_a) has matrix diag(P q, q P) for constant P, by the
    // Cartan formula: L_Q dx^j = dξ_k P^jk and ∂ξ_k ↦ P^ik ∂x^i.
    let mut rng = random::seeded(11);
    for _ in 0..4 {
        let p = random::antisymmetric(&mut rng, 3, 3);
        let q = random::matrix(&mut rng, 3, 3, 3);
        let m = poisson_model(&p);
        let got = constant_matrix(&delta(&m, &tangent_to_fiber(&m, &q)).unwrap());
        assert_eq!(got, block_diag(&(&p * &q), &(&q * &p)));
    }
}

#[test]
fn symplectic_case_passes() {
    let w = QMatrix::from_i64(&[&[0, 2, 0, 1], &[-2, 0, 1, 0], &[0, -1, 0, 3], &[-1, 0, -3, 0]]);
    let p = w.inverse().unwrap();
    let m = poisson_model(&p);
    let h = HHStructure::new(&m, vec![], vec![tangent_to_fiber(&m, &(-&w))]).unwrap();
    let r = check_hhs(&h).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(r.residuals.iter().all(|s| s.is_empty()));
}

#[test]
fn doubled_homotopy_leaves_minus_identity() {
    let w = standard_symplectic(1);
    let m = poisson_model(&w.inverse().unwrap());
    let h = HHStructure::new(&m, vec![], vec![tangent_to_fiber(&m, &(-&w)).scale(&int(2))]).unwrap();
    let r = check_hhs(&h).unwrap();
    assert!(r.eq1.passed && r.eq2.passed);
    assert!(!r.eq3.passed);
    // δ(2𝓠₁) + id = -2 id + id
    let residual = r.residuals[2].values().fold(VectorValuedForm::zero(m.space()), |acc, k| &acc + k);
    assert_eq!(residual, VectorValuedForm::identity(m.space()).scale(&int(-1)));
}

#[test]
fn complex_case_passes_and_reduces_to_blocks() {
    let i = rotation();
    assert_eq!(&i * &i, -&QMatrix::identity(2));
    let m = poisson_model(&QMatrix::zeros(2, 2));
    assert!(m.homological_field().is_zero());
    let first = diagonal_form(&m, &i, &i.transpose());
    // blockwise oracle: ½[𝓘₁,𝓘₁]_NR = diag(I², (ᵗI)²)
    let half_square = crate::cartan::nr_bracket(&first, &first).unwrap().scale(&rat(1, 2));
    assert_eq!(constant_matrix(&half_square), block_diag(&(&i * &i), &(&i.transpose() * &i.transpose())));
    let h = HHStructure::new(&m, vec![first], vec![]).unwrap();
    assert!(check_hhs(&h).unwrap().passed());
}

#[test]
fn non_complex_block_fails_only_eq3() {
    let i = QMatrix::from_i64(&[&[1, 1], &[0, 1]]);
    let m = poisson_model(&QMatrix::zeros(2, 2));
    let h = HHStructure::new(&m, vec![diagonal_form(&m, &i, &i.transpose())], vec![]).unwrap();
    let r = check_hhs(&h).unwrap();
    assert!(r.eq1.passed && r.eq2.passed && !r.eq3.passed);
    let residual = r.residuals[2].values().fold(VectorValuedForm::zero(m.space()), |acc, k| &acc + k);
    let id = QMatrix::identity(2);
    let expected = block_diag(&(&(&i * &i) + &id), &(&(&i.transpose() * &i.transpose()) + &id));
    assert_eq!(constant_matrix(&residual), expected);
}

#[test]
fn point_stack_is_degenerate() {
    let m = poisson_model(&QMatrix::zeros(0, 0));
    let r = check_hhs(&HHStructure::zero(&m)).unwrap();
    assert!(r.eq1.passed && r.eq2.passed);
    assert!(!r.eq3.passed);
    assert_eq!(r.eq3.residuals[0].location, "degenerate");
}

#[test]
fn malformed_bidegrees_are_rejected() {
    let m = poisson_model(&standard_symplectic(1));
    let wrong = tangent_to_fiber(&m, &QMatrix::identity(2));
    assert!(matches!(HHStructure::new(&m, vec![wrong], vec![]), Err(HolostackError::Bidegree(_))));
    let wrong = VectorValuedForm::identity(m.space());
    assert!(matches!(HHStructure::new(&m, vec![], vec![wrong]), Err(HolostackError::Bidegree(_))));
    let other = poisson_model(&QMatrix::zeros(3, 3));
    let foreign = VectorValuedForm::identity(other.space());
    assert!(HHStructure::new(&m, vec![foreign], vec![]).is_err());
}

#[test]
fn delta_twist_is_configurable() {
    // With a rotation block and an x-dependent 𝓠₁, [𝓘, 𝓠]_FN is nonzero, so the two
    // readings of δ_𝓘 differ.
    let w = standard_symplectic(1);
    let m = poisson_model(&w.inverse().unwrap());
    let s = m.space();
    let q1 = tangent_to_fiber(&m, &(-&w));
    let mut xq = vec![s.zero(); 4];
    xq[2] = &s.coord(0) * &s.diff(1);
    let q1 = &q1 + &VectorValuedForm::new(s, xq).unwrap();
    let first = diagonal_form(&m, &rotation(), &rotation().transpose());
    let h = HHStructure::new(&m, vec![first.clone()], vec![q1.clone()]).unwrap();
    let twisted = check_hhs(&h).unwrap();
    let plain = check_hhs_with(&h, &Conventions { delta_twist: DeltaTwist::Plain, ..Conventions::default() }).unwrap();
    let correction = crate::cartan::fn_bracket(&first, &q1).unwrap();
    assert!(!correction.is_zero());
    let sum = |r: &HhsReport| r.residuals[2].values().fold(VectorValuedForm::zero(s), |acc, k| &acc + k);
    assert_eq!(&sum(&twisted) - &sum(&plain), correction);
    assert_eq!(twisted.conventions["delta_twist"], "delta + [I,-]_FN");
}

#[test]
fn from_symplectic_gc() {
    let w = QMatrix::from_i64(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 2], &[0, 0, -2, 0]]);
    let j = GCStructure::from_symplectic_matrix(&chart(4), &w).unwrap();
    let d = hhs_from_gc(&j).unwrap();
    assert!(d.structure.complex_parts().is_empty());
    assert_eq!(d.structure.homotopy_parts().len(), 1);
    assert_eq!(d.structure.homotopy_part(1), tangent_to_fiber(d.structure.model(), &(-&w)));
    assert!(d.solved && d.second_order.is_zero() && d.unsolved.is_empty());
    assert!(d.report.passed());
}

#[test]
fn from_constant_complex_gc() {
    let i = rotation();
    let j = GCStructure::from_complex_matrix(&chart(2), &i).unwrap();
    let d = hhs_from_gc(&j).unwrap();
    assert!(d.solved && d.second_order.is_zero());
    assert_eq!(d.structure.complex_part(1), diagonal_form(d.structure.model(), &i, &i.transpose()));
    assert!(d.structure.homotopy_parts().is_empty());
    assert!(d.report.passed());
}

/// B-transform of `J_ω`: `I = PB`, `P`, `Q = -ω - BPB`, every block nonzero.
fn b_transformed(w: &QMatrix, b: &QMatrix) -> (QMatrix, QMatrix, QMatrix) {
    let p = w.inverse().unwrap();
    let i = &p * b;
    let q = &(-w) - &(&(b * &p) * b);
    (i, p, q)
}

/// `J² = -1` blockwise for `J = [[-I, P], [Q, ᵗI]]`.
fn squares_to_minus_one(i: &QMatrix, p: &QMatrix, q: &QMatrix) -> bool {
    let n = i.rows();
    let j = (-i).hstack(p).vstack(&q.hstack(&i.transpose()));
    &j * &j == -&QMatrix::identity(2 * n)
}

#[test]
fn from_generic_constant_gc() {
    let w = standard_symplectic(2);
    let b = QMatrix::from_i64(&[&[0, 1, 2, 0], &[-1, 0, 1, 1], &[-2, -1, 0, 3], &[0, -1, -3, 0]]);
    let (i, p, q) = b_transformed(&w, &b);
    assert!(squares_to_minus_one(&i, &p, &q));
    assert!(!i.is_zero() && !p.is_zero() && !q.is_zero());
    let j = GCStructure::from_constant_blocks(&chart(4), &i, &p, &q).unwrap();
    let d = hhs_from_gc(&j).unwrap();
    // constant data: [𝓘₁, 𝓘₁]_FN = 0, so the linear system has right-hand side zero
    assert!(d.solved, "{:?}", d.unsolved);
    assert!(d.second_order.is_zero());
    assert!(d.report.passed(), "{:?}", d.report);
}

#[test]
fn from_nonconstant_complex_gc() {
    let s = chart(2);
    let x = s.coord(0);
    let one = s.constant(int(1));
    let f = &one + &(&x * &x);
    let block = vec![vec![x.clone(), -&f], vec![one.clone(), -&x]];
    let sq: Vec<Vec<Element>> = (0..2)
        .map(|a| (0..2).map(|c| (0..2).fold(s.zero(), |acc, b| &acc + &(&block[a][b] * &block[b][c]))).collect())
        .collect();
    assert_eq!(sq, vec![vec![-&one, s.zero()], vec![s.zero(), -&one]]);
    let j = GCStructure::from_complex(&VectorValuedForm::from_matrix(&s, &block).unwrap()).unwrap();
    let d = hhs_from_gc(&j).unwrap();
    assert!(d.report.passed(), "{:?}", d.report);
}

#[test]
fn from_nonconstant_symplectic_gc() {
    // ω = dx1 dx2 + x1 dx1 dx3 + dx3 dx4 is closed with Pfaffian 1.
    let s = chart(4);
    let x1 = s.coord(0);
    let c = |v: i64| s.constant(int(v));
    let z = s.zero();
    let w = [
        vec![z.clone(), c(1), x1.clone(), z.clone()],
        vec![c(-1), z.clone(), z.clone(), z.clone()],
        vec![-&x1, z.clone(), z.clone(), c(1)],
        vec![z.clone(), z.clone(), c(-1), z.clone()],
    ];
    let p = vec![
        vec![z.clone(), c(-1), z.clone(), z.clone()],
        vec![c(1), z.clone(), z.clone(), x1.clone()],
        vec![z.clone(), z.clone(), z.clone(), c(-1)],
        vec![z.clone(), -&x1, c(1), z.clone()],
    ];
    for a in 0..4 {
        for b in 0..4 {
            let e = (0..4).fold(s.zero(), |acc, k| &acc + &(&p[a][k] * &w[k][b]));
            assert_eq!(e, if a == b { c(1) } else { z.clone() });
        }
    }
    let minus_w: Vec<Vec<Element>> = w.iter().map(|r| r.iter().map(|e| -e).collect()).collect();
    let j = GCStructure::new(&s, vec![vec![z.clone(); 4]; 4], p, minus_w, None).unwrap();
    let d = hhs_from_gc(&j).unwrap();
    assert!(d.structure.complex_parts().is_empty());
    assert!(d.report.passed(), "{:?}", d.report);
}

#[test]
fn failing_gc_is_rejected() {
    let i = QMatrix::from_i64(&[&[1, 0], &[0, 1]]);
    let j = GCStructure::from_complex_matrix(&chart(2), &i).unwrap();
    assert!(matches!(hhs_from_gc(&j), Err(HolostackError::NotGeneralizedComplex(_))));
}

fn complexify(m: &QMatrix) -> CMatrix {
    m.map(|v| Complex::new(v.clone(), int(0)))
}

fn cunit() -> Complex<Rational> {
    Complex::new(int(0), int(1))
}

#[test]
fn symplectic_foliation_passes() {
    let w = QMatrix::from_i64(&[&[0, 3], &[-3, 0]]);
    let j = GCStructure::from_symplectic_matrix(&chart(2), &w).unwrap();
    let h = hhs_from_gc(&j).unwrap().structure;
    let f = FoliationCandidate::symplectic_canonical(h.model()).unwrap();
    // oracle: with ρ = id and 𝓘₁ = 0, dγ + γd = -i needs γ = -i P⁻¹ = -i ω
    let gamma = complexify(&w).scale(&-cunit());
    assert_eq!(f.homotopy(), &gamma);
    let r = check_foliation(&f, &h).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn perturbed_homotopy_fails_square() {
    let w = standard_symplectic(1);
    let j = GCStructure::from_symplectic_matrix(&chart(2), &w).unwrap();
    let h = hhs_from_gc(&j).unwrap().structure;
    let f = FoliationCandidate::symplectic_canonical(h.model()).unwrap();
    let mut bump = CMatrix::zeros(2, 2);
    bump[(0, 1)] = Complex::new(int(1), int(2));
    let g = f.with_homotopy(&f.homotopy().clone() + &bump).unwrap();
    let r = check_foliation(&g, &h).unwrap();
    assert!(r.quasi_isomorphism.passed && r.anchor_chain_map.passed);
    assert!(!r.square.passed);
}

#[test]
fn complex_foliation_is_minus_i_eigenspace() {
    let i = rotation();
    let j = GCStructure::from_complex_matrix(&chart(2), &i).unwrap();
    let h = hhs_from_gc(&j).unwrap().structure;
    let f = FoliationCandidate::eigenspaces(h.model(), &i, &i.transpose()).unwrap();
    let (lower, upper) = f.anchor();
    // eigenspace oracle
    assert_eq!(upper.cols(), 1);
    assert_eq!(&complexify(&i) * upper, upper.scale(&-cunit()));
    assert_eq!(&complexify(&i.transpose()) * lower, lower.scale(&-cunit()));
    assert!(f.homotopy().is_zero());
    assert!(check_foliation(&f, &h).unwrap().passed());

    // the +i eigenspace spans too, but does not intertwine -i with 𝓘₁
    let g = f.conjugate();
    let r = check_foliation(&g, &h).unwrap();
    assert!(r.quasi_isomorphism.passed && !r.square.passed);
}

#[test]
fn half_foliation_is_not_quasi_isomorphic() {
    let i = rotation();
    let j = GCStructure::from_complex_matrix(&chart(2), &i).unwrap();
    let h = hhs_from_gc(&j).unwrap().structure;
    let f = FoliationCandidate::eigenspaces(h.model(), &i, &i.transpose()).unwrap();
    let (lower, upper) = f.anchor();
    let trimmed = FoliationCandidate::new(
        CMatrix::zeros(1, 0),
        CMatrix::zeros(2, 0),
        upper.clone(),
        vec![vec![vec![Complex::new(int(0), int(0))]]],
        CMatrix::zeros(2, 1),
    )
    .unwrap();
    assert_eq!(lower.cols(), 1);
    let r = check_foliation(&trimmed, &h).unwrap();
    assert!(!r.quasi_isomorphism.passed);
}

#[test]
fn foliation_shape_mismatch() {
    let i = rotation();
    let h = hhs_from_gc(&GCStructure::from_complex_matrix(&chart(2), &i).unwrap()).unwrap().structure;
    let f = FoliationCandidate::new(
        CMatrix::zeros(3, 0),
        CMatrix::zeros(2, 0),
        CMatrix::zeros(3, 3),
        vec![vec![vec![Complex::new(int(0), int(0)); 3]; 3]; 3],
        CMatrix::zeros(2, 3),
    )
    .unwrap();
    assert!(matches!(check_foliation(&f, &h), Err(HolostackError::Shape(_))));
    assert!(FoliationCandidate::new(
        CMatrix::zeros(1, 1),
        CMatrix::zeros(2, 2),
        CMatrix::zeros(2, 1),
        vec![],
        CMatrix::zeros(2, 1)
    )
    .is_err());
}

#[test]
fn foliation_bracket_axioms() {
    let mut c = vec![vec![vec![Complex::new(int(0), int(0)); 2]; 2]; 2];
    c[0][0][1] = Complex::new(int(1), int(0));
    let f = FoliationCandidate::new(
        CMatrix::zeros(2, 0),
        CMatrix::zeros(2, 0),
        CMatrix::identity(2),
        c.clone(),
        CMatrix::zeros(2, 2),
    )
    .unwrap();
    let ax = f.axioms();
    assert!(!ax.passed);
    assert!(ax.residuals.iter().any(|r| r.location.starts_with("antisymmetry")));
    c[0][1][0] = Complex::new(int(-1), int(0));
    let g = FoliationCandidate::new(
        CMatrix::zeros(2, 0),
        CMatrix::zeros(2, 0),
        CMatrix::zeros(2, 2),
        c,
        CMatrix::zeros(2, 2),
    )
    .unwrap();
    assert!(g.axioms().passed);
}

/// Pushforward of a vector-valued form along the linear change `z' = M z`.
fn push(k: &VectorValuedForm, target: &Arc<CartanChart>, m: &QMatrix) -> VectorValuedForm {
    let inv = m.inverse().unwrap();
    let src = k.space();
    let mut rules = HashMap::new();
    for a in 0..src.dim() {
        let image = (0..src.dim()).fold(target.zero(), |acc, b| &acc + &target.coord(b).scale(&inv[(a, b)]));
        rules.insert(format!("d{}", src.coord_name(a)), d_element(target, &image));
        rules.insert(src.coord_name(a).to_string(), image);
    }
    let pulled: Vec<Element> = k.components().iter().map(|c| c.pullback(target.chart(), &rules).unwrap()).collect();
    let comps = (0..src.dim())
        .map(|a| (0..src.dim()).fold(target.zero(), |acc, b| &acc + &pulled[b].scale(&m[(a, b)])))
        .collect();
    VectorValuedForm::new(target, comps).unwrap()
}

fn total(r: &HhsReport, i: usize, space: &Arc<CartanChart>) -> VectorValuedForm {
    r.residuals[i].values().fold(VectorValuedForm::zero(space), |acc, k| &acc + k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn residuals_are_natural(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let p = random::antisymmetric(&mut rng, 2, 2);
        let g = random::invertible(&mut rng, 2, 2);
        let m = poisson_model(&p);
        let s = m.space();
        let mut first = diagonal_form(&m, &random::matrix(&mut rng, 2, 2, 2), &random::matrix(&mut rng, 2, 2, 2));
        let extra = random::matrix(&mut rng, 2, 2, 2);
        let mut comps = first.components().to_vec();
        comps[2] = &comps[2] + &(&s.coord(2) * &s.diff(0)).scale(&extra[(0, 0)]);
        comps[3] = &comps[3] + &(&s.coord(3) * &s.diff(1)).scale(&extra[(1, 1)]);
        first = VectorValuedForm::new(s, comps).unwrap();
        let hom = tangent_to_fiber(&m, &random::matrix(&mut rng, 2, 2, 2));
        let h = HHStructure::new(&m, vec![first.clone()], vec![hom.clone()]).unwrap();

        // x' = g x, ξ' = g^-T ξ; the Poisson tensor becomes g P gᵀ
        let big = block_diag(&g, &g.inverse().unwrap().transpose());
        let m2 = poisson_model(&(&(&g * &p) * &g.transpose()));
        let s2 = m2.space();
        prop_assert_eq!(push(m.homological_field(), s2, &big), m2.homological_field().clone());
        let h2 = HHStructure::new(&m2, vec![push(&first, s2, &big)], vec![push(&hom, s2, &big)]).unwrap();
        let (r, r2) = (check_hhs(&h).unwrap(), check_hhs(&h2).unwrap());
        for k in 0..3 {
            prop_assert_eq!(push(&total(&r, k, s), s2, &big), total(&r2, k, s2));
        }
    }

    #[test]
    fn symplectic_gc_passes(seed in any::<u64>(), n in 1usize..=3) {
        let w = random::symplectic_form(&mut random::seeded(seed), 2 * n, 3);
        let j = GCStructure::from_symplectic_matrix(&chart(2 * n), &w).unwrap();
        let d = hhs_from_gc(&j).unwrap();
        prop_assert!(d.report.passed());
        prop_assert!(d.structure.complex_parts().is_empty());
    }

    #[test]
    fn complex_gc_passes(seed in any::<u64>(), n in 1usize..=2) {
        let i = random::complex_structure(&mut random::seeded(seed), 2 * n, 2);
        let j = GCStructure::from_complex_matrix(&chart(2 * n), &i).unwrap();
        let d = hhs_from_gc(&j).unwrap();
        prop_assert!(d.solved && d.second_order.is_zero());
        prop_assert!(d.report.passed());
    }

    #[test]
    fn b_transformed_gc_passes(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let w = random::symplectic_form(&mut rng, 4, 2);
        let b = random::antisymmetric(&mut rng, 4, 2);
        let (i, p, q) = b_transformed(&w, &b);
        prop_assert!(squares_to_minus_one(&i, &p, &q));
        let j = GCStructure::from_constant_blocks(&chart(4), &i, &p, &q).unwrap();
        let d = hhs_from_gc(&j).unwrap();
        prop_assert!(d.report.passed());
    }

    #[test]
    fn symplectic_foliation_passes_for_random_forms(seed in any::<u64>(), n in 1usize..=2) {
        let w = random::symplectic_form(&mut random::seeded(seed), 2 * n, 3);
        let j = GCStructure::from_symplectic_matrix(&chart(2 * n), &w).unwrap();
        let h = hhs_from_gc(&j).unwrap().structure;
        let f = FoliationCandidate::symplectic_canonical(h.model()).unwrap();
        prop_assert!(check_foliation(&f, &h).unwrap().passed());
    }
}
