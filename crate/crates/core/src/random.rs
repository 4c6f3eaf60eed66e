//! Seeded generators for random exact instances.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cartan::{CartanChart, Form, MultiVector, VectorValuedForm};
use crate::scalar::{int, rat};
use crate::{Element, QMatrix, Rational};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational with numerator in `-bound..=bound` and denominator in `1..=3`.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
}

pub fn small_integer<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

/// Random polynomial in the degree-zero coordinates of `space`, total degree
/// at most `degree`, with up to `terms` monomials.
pub fn polynomial<R: Rng>(rng: &mut R, space: &Arc<CartanChart>, degree: u32, terms: usize) -> Element {
    let even: Vec<usize> =
        (0..space.dim()).filter(|&a| space.coord_degree(a) == crate::symcore::Degree::ZERO).collect();
    let mut out = space.zero();
    for _ in 0..terms {
        let mut mono = space.constant(small_integer(rng, 3));
        let d = rng.gen_range(0..=degree);
        for _ in 0..d {
            if even.is_empty() {
                break;
            }
            mono = &mono * &space.coord(even[rng.gen_range(0..even.len())]);
        }
        out = &out + &mono;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in subsets(n, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                let mut s = vec![first];
                s.extend(rest);
                out.push(s);
            }
        }
    }
    out
}

/// Random `p`-form with polynomial coefficients.
pub fn form<R: Rng>(rng: &mut R, space: &Arc<CartanChart>, p: usize, degree: u32) -> Form {
    let mut v = space.zero();
    for s in subsets(space.dim(), p) {
        if rng.gen_bool(0.6) {
            let basis = s.iter().fold(space.constant(int(1)), |acc, &a| &acc * &space.diff(a));
            v = &v + &(&polynomial(rng, space, degree, 2) * &basis);
        }
    }
    Form::new(space, v).expect("random form")
}

/// Random `q`-vector field with polynomial coefficients.
pub fn multivector<R: Rng>(rng: &mut R, space: &Arc<CartanChart>, q: usize, degree: u32) -> MultiVector {
    let mut v = space.zero();
    for s in subsets(space.dim(), q) {
        if rng.gen_bool(0.6) {
            let basis = s
                .iter()
                .fold(space.constant(int(1)), |acc, &a| &acc * &space.vector_symbol(a).expect("vector symbols"));
            v = &v + &(&polynomial(rng, space, degree, 2) * &basis);
        }
    }
    MultiVector::new(space, v).expect("random multivector")
}

/// Random vector-valued `p`-form with polynomial coefficients.
pub fn vector_valued<R: Rng>(rng: &mut R, space: &Arc<CartanChart>, p: usize, degree: u32) -> VectorValuedForm {
    let comps = (0..space.dim()).map(|_| form(rng, space, p, degree).into_element()).collect();
    VectorValuedForm::new(space, comps).expect("random vector-valued form")
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| small_integer(rng, bound))
}

pub fn antisymmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = small_integer(rng, bound);
            m[(j, i)] = -v.clone();
            m[(i, j)] = v;
        }
    }
    m
}

/// Random invertible antisymmetric matrix of even size.
pub fn symplectic_form<R: Rng>(rng: &mut R, n: usize, bound: i64) -> QMatrix {
    assert!(n.is_multiple_of(2), "symplectic forms need even dimension");
    loop {
        let m = antisymmetric(rng, n, bound);
        if m.inverse().is_some() {
            return m;
        }
    }
}

pub fn invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> QMatrix {
    loop {
        let m = matrix(rng, n, n, bound);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Random constant complex structure `g J0 g^-1` on `R^n`, `n` even.
pub fn complex_structure<R: Rng>(rng: &mut R, n: usize, bound: i64) -> QMatrix {
    assert!(n.is_multiple_of(2), "complex structures need even dimension");
    let mut j0 = QMatrix::zeros(n, n);
    for k in 0..n / 2 {
        j0[(2 * k, 2 * k + 1)] = int(-1);
        j0[(2 * k + 1, 2 * k)] = int(1);
    }
    let g = invertible(rng, n, bound);
    &(&g * &j0) * &g.inverse().expect("invertible")
}

/// Random rational point for the degree-zero coordinates of `space`.
pub fn point<R: Rng>(rng: &mut R, space: &CartanChart) -> std::collections::HashMap<String, Rational> {
    (0..space.dim())
        .filter(|&a| space.coord_degree(a) == crate::symcore::Degree::ZERO)
        .map(|a| (space.coord_name(a).to_string(), small_rational(rng, 5)))
        .collect()
}
