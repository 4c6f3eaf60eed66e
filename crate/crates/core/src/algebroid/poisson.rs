use super::{derive_coord, AlgebroidError, LieAlgebroid};
use crate::affine::AffineSubspace;
use crate::cartan::{exterior_d, interior, lie_derivative, schouten, Form, MultiVector};
use crate::Element;

/// `T*X` with anchor `P#` and bracket `[α,β] = L_(Pα) β - i_(Pβ) dα`.
pub fn poisson_algebroid(p: &MultiVector) -> Result<LieAlgebroid, AlgebroidError> {
    let pp = schouten(p, p)?;
    if !pp.is_zero() {
        return Err(AlgebroidError::NotPoisson(pp.element().to_string()));
    }
    let space = p.space();
    let n = space.dim();
    let pm = p.bivector_matrix();
    let frame: Vec<String> = (0..n).map(|i| format!("d{}", space.coord_name(i))).collect();
    let sharp = |i: usize| -> MultiVector {
        let comps: Vec<Element> = (0..n).map(|k| pm[k][i].clone()).collect();
        MultiVector::vector_field(space, &comps).expect("vector field")
    };
    let mut structure = vec![vec![vec![space.zero(); n]; n]; n];
    for i in 0..n {
        let di = Form::new(space, space.diff(i))?;
        for j in 0..n {
            let dj = Form::new(space, space.diff(j))?;
            let bracket = &lie_derivative(&sharp(i), &dj)? - &interior(&sharp(j), &exterior_d(&di))?;
            for (k, slot) in structure.iter_mut().enumerate() {
                slot[i][j] = bracket.evaluate_on(&[MultiVector::coordinate(space, k)?])?;
            }
        }
    }
    LieAlgebroid::new(space, frame, pm, structure)
}

/// `P(α, β)` on `S` for covectors in the annihilator of `TS`, i.e. whether
/// `P#(Ann TS) ⊆ TS` along `S`.
pub fn is_coisotropic(s: &AffineSubspace, p: &MultiVector) -> Result<bool, AlgebroidError> {
    let space = p.space();
    if s.ambient_dim() != space.dim() {
        return Err(AlgebroidError::Shape("subspace dimension does not match the chart".into()));
    }
    let params = s.parameter_chart("s").map_err(|e| AlgebroidError::Shape(e.to_string()))?;
    let ann = s.annihilator();
    let pm = p.bivector_matrix();
    for a in 0..ann.cols() {
        for b in a + 1..ann.cols() {
            let mut pairing = space.zero();
            for i in 0..space.dim() {
                for k in 0..space.dim() {
                    let c = &ann[(i, b)] * &ann[(k, a)];
                    pairing = &pairing + &pm[i][k].scale(&c);
                }
            }
            let restricted = s.restrict(&pairing, space, &params).map_err(|e| AlgebroidError::Shape(e.to_string()))?;
            if !restricted.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Conormal bundle of a coisotropic affine subspace, as an algebroid over the
/// subspace's parameter chart. The frame is a basis `α_a` of `Ann TS`, the
/// anchor is `P#α_a` written in the subspace basis, and `[α_a, α_b]` is the
/// Poisson-algebroid bracket `d(P(α_b, α_a))` restricted to `S`.
pub fn conormal_algebroid(s: &AffineSubspace, p: &MultiVector) -> Result<LieAlgebroid, AlgebroidError> {
    if !is_coisotropic(s, p)? {
        return Err(AlgebroidError::NotCoisotropic);
    }
    let space = p.space();
    let n = space.dim();
    let params = s.parameter_chart("s").map_err(|e| AlgebroidError::Shape(e.to_string()))?;
    let restrict = |e: &Element| s.restrict(e, space, &params).map_err(|e| AlgebroidError::Shape(e.to_string()));
    let ann = s.annihilator();
    let r = ann.cols();
    let pm = p.bivector_matrix();
    let left = s.left_inverse();
    let ann_left = {
        let at = ann.transpose();
        &(&at * &ann).inverse().expect("independent annihilator") * &at
    };
    let apply = |m: &crate::QMatrix, v: &[Element]| -> Vec<Element> {
        (0..m.rows())
            .map(|row| v.iter().enumerate().fold(params.zero(), |acc, (i, e)| &acc + &e.scale(&m[(row, i)])))
            .collect()
    };
    // P#α as ambient components, then restricted
    let sharp = |a: usize| -> Vec<Element> {
        (0..n).map(|i| (0..n).fold(space.zero(), |acc, k| &acc + &pm[i][k].scale(&ann[(k, a)]))).collect()
    };
    let mut anchor = vec![vec![params.zero(); r]; s.dim()];
    for a in 0..r {
        let restricted: Vec<Element> = sharp(a).iter().map(&restrict).collect::<Result<_, _>>()?;
        let coords = apply(&left, &restricted);
        for (j, c) in coords.into_iter().enumerate() {
            anchor[j][a] = c;
        }
    }
    let mut structure = vec![vec![vec![params.zero(); r]; r]; r];
    for a in 0..r {
        let pa = sharp(a);
        for b in 0..r {
            let f = (0..n).fold(space.zero(), |acc, i| &acc + &pa[i].scale(&ann[(i, b)]));
            let df: Vec<Element> = (0..n).map(|k| restrict(&derive_coord(&f, k))).collect::<Result<_, _>>()?;
            let coeffs = apply(&ann_left, &df);
            let back = apply(&ann, &coeffs);
            if back.iter().zip(&df).any(|(x, y)| x != y) {
                return Err(AlgebroidError::Shape("restricted bracket leaves the conormal bundle".into()));
            }
            for (k, c) in coeffs.into_iter().enumerate() {
                structure[k][a][b] = c;
            }
        }
    }
    let frame = (1..=r).map(|a| format!("α{a}")).collect();
    LieAlgebroid::new(&params, frame, anchor, structure)
}
