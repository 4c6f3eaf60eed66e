use std::collections::HashMap;
use std::sync::Arc;

use super::{is_function, AlgebroidError, LieAlgebroid};
use crate::cartan::{d_k, CartanChart, CartanError, VectorValuedForm};
use crate::report::{Check, Residuals};
use crate::{Element, Rational};

/// Graded chart of `A[1]`: base coordinates in degree 0 and fiber
/// coordinates `ξ1..ξr` in degree 1, with the homological vector field `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct CeModel {
    algebroid: LieAlgebroid,
    space: Arc<CartanChart>,
    q: VectorValuedForm,
}

impl CeModel {
    pub fn new(a: &LieAlgebroid) -> Result<Self, AlgebroidError> {
        let base = a.space();
        let (n, r) = (base.dim(), a.rank());
        let names: Vec<String> =
            (0..n).map(|i| base.coord_name(i).to_string()).chain((1..=r).map(|k| format!("ξ{k}"))).collect();
        let coords: Vec<(&str, i32)> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i32::from(i >= n))).collect();
        let space = CartanChart::graded(&coords)?;
        let mut model = CeModel { algebroid: a.clone(), space: space.clone(), q: VectorValuedForm::zero(&space) };
        let xi = |k: usize| space.coord(n + k);
        let mut comps = Vec::with_capacity(n + r);
        for i in 0..n {
            let mut acc = space.zero();
            for (k, rho) in a.anchor()[i].iter().enumerate() {
                acc = &acc + &(&xi(k) * &model.lift(rho)?);
            }
            comps.push(acc);
        }
        let half = Rational::new(1.into(), 2.into());
        for k in 0..r {
            let mut acc = space.zero();
            for x in 0..r {
                for y in 0..r {
                    let c = model.lift(&a.structure()[k][x][y])?;
                    acc = &acc - &(&(&xi(x) * &xi(y)) * &c).scale(&half);
                }
            }
            comps.push(acc);
        }
        model.q = VectorValuedForm::new(&space, comps)?;
        Ok(model)
    }

    pub fn algebroid(&self) -> &LieAlgebroid {
        &self.algebroid
    }

    pub fn space(&self) -> &Arc<CartanChart> {
        &self.space
    }

    /// `δ` as a degree-one vector field on `A[1]`.
    pub fn homological_field(&self) -> &VectorValuedForm {
        &self.q
    }

    pub fn xi(&self, k: usize) -> Element {
        self.space.coord(self.algebroid.space().dim() + k)
    }

    /// A function on the base, viewed on `A[1]`.
    pub fn lift(&self, f: &Element) -> Result<Element, AlgebroidError> {
        let base = self.algebroid.space();
        base.check(f)?;
        if !is_function(base, f) {
            return Err(AlgebroidError::Shape("only base functions lift to the CE chart".into()));
        }
        let mut rules = HashMap::new();
        for (idx, g) in f.chart().generators().iter().enumerate() {
            let image = if idx < base.dim() { self.space.coord(idx) } else { self.space.zero() };
            rules.insert(g.name.clone(), image);
        }
        Ok(f.pullback(self.space.chart(), &rules).map_err(CartanError::from)?)
    }
}

/// `δφ = L_Q φ`. On CE functions this is the derivation with
/// `x^i ↦ ξ^a ρ^i_a` and `ξ^k ↦ -½ ξ^a ξ^b c^k_ab`.
pub fn ce_differential(model: &CeModel, phi: &Element) -> Result<Element, AlgebroidError> {
    model.space.check(phi)?;
    Ok(d_k(&model.q, phi))
}

/// `δ²` on every generator of the CE chart; each residual is a nonzero image.
pub fn ce_square_residuals(model: &CeModel) -> Check {
    let mut res = Residuals::new();
    let s = &model.space;
    for a in 0..s.dim() {
        for (label, g) in [(s.coord_name(a).to_string(), s.coord(a)), (format!("d{}", s.coord_name(a)), s.diff(a))] {
            let v = d_k(&model.q, &d_k(&model.q, &g));
            res.push_if(!v.is_zero(), label, &v);
        }
    }
    res.into_check()
}
