use super::double::LinearSubtorus;
use super::{is_integral, SymplecticTorus, ToriError};
use crate::report::{Check, Summary};
use crate::scalar::format_rational;
use crate::{QMatrix, Rational};
use std::collections::BTreeMap;

/// Linear subtorus `offset + span(basis)` with curvature `F̃ = F/2πi`
/// written in the basis of the subtorus.
#[derive(Clone, Debug, PartialEq)]
pub struct CoisotropicBrane {
    basis: QMatrix,
    offset: Vec<Rational>,
    curvature: QMatrix,
}

impl CoisotropicBrane {
    pub fn new(basis: QMatrix, offset: Vec<Rational>, curvature: QMatrix) -> Result<Self, ToriError> {
        if offset.len() != basis.rows() {
            return Err(ToriError::Shape("offset must live in the ambient torus".into()));
        }
        if !is_integral(&basis) {
            return Err(ToriError::NotIntegral);
        }
        if basis.rank() != basis.cols() {
            return Err(ToriError::Shape("subtorus basis must be linearly independent".into()));
        }
        if curvature.rows() != basis.cols() || !curvature.is_antisymmetric() {
            return Err(ToriError::NotAntisymmetric);
        }
        Ok(CoisotropicBrane { basis, offset, curvature })
    }

    /// Space-filling brane with ambient curvature `F̃`.
    pub fn full(curvature: QMatrix) -> Result<Self, ToriError> {
        let n = curvature.rows();
        Self::new(QMatrix::identity(n), vec![Rational::from_integer(0.into()); n], curvature)
    }

    /// Restricts an ambient two-form to the subtorus.
    pub fn from_ambient(basis: QMatrix, offset: Vec<Rational>, ambient: &QMatrix) -> Result<Self, ToriError> {
        if !ambient.is_antisymmetric() || ambient.rows() != basis.rows() {
            return Err(ToriError::NotAntisymmetric);
        }
        let restricted = &(&basis.transpose() * ambient) * &basis;
        Self::new(basis, offset, restricted)
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    pub fn curvature(&self) -> &QMatrix {
        &self.curvature
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BraneReport {
    pub coisotropic: Check,
    /// `ι_v F̃ = 0` for `v` in the characteristic directions.
    pub curvature_on_leaves: Check,
    /// `K = ω⁻¹F̃` on the transverse space squares to `-1`.
    pub transverse_complex: Check,
    pub leaf_dim: usize,
    pub transverse_dim: usize,
    pub transverse_structure: Option<QMatrix>,
}

impl Summary for BraneReport {
    fn checks(&self) -> Vec<(String, Check)> {
        vec![
            ("coisotropic".into(), self.coisotropic.clone()),
            ("curvature_on_leaves".into(), self.curvature_on_leaves.clone()),
            ("transverse_complex".into(), self.transverse_complex.clone()),
        ]
    }

    fn details(&self) -> BTreeMap<String, String> {
        let mut d = BTreeMap::new();
        d.insert("leaf_dim".into(), self.leaf_dim.to_string());
        d.insert("transverse_dim".into(), self.transverse_dim.to_string());
        if let Some(k) = &self.transverse_structure {
            d.insert("K".into(), k.to_string());
        }
        d
    }
}

pub fn is_coisotropic_brane(t: &SymplecticTorus, b: &CoisotropicBrane) -> BraneReport {
    let w = &b.basis;
    if w.rows() != t.dim() {
        let fail = Check::fail("shape", "brane and torus dimensions differ");
        return BraneReport {
            coisotropic: fail.clone(),
            curvature_on_leaves: fail.clone(),
            transverse_complex: fail,
            leaf_dim: 0,
            transverse_dim: 0,
            transverse_structure: None,
        };
    }
    let k = b.dim();
    let restricted = &(&w.transpose() * t.omega()) * w;
    let leaves = restricted.kernel();
    let leaf_dim = leaves.cols();
    let coisotropic = if leaf_dim == t.dim() - k {
        Check::pass()
    } else {
        Check::fail("W^ω ∩ W", format!("dimension {leaf_dim}, expected {}", t.dim() - k))
    };
    let on_leaves = &b.curvature * &leaves;
    let curvature_on_leaves =
        if on_leaves.is_zero() { Check::pass() } else { Check::fail("ι_leaf F", on_leaves.transpose()) };

    let transverse = QMatrix::identity(k).complement_in(&leaves);
    let tdim = transverse.cols();
    let reduce = |m: &QMatrix| &(&transverse.transpose() * m) * &transverse;
    let (omega_red, f_red) = (reduce(&restricted), reduce(&b.curvature));
    let (transverse_complex, structure) = match omega_red.inverse() {
        Some(inv) => {
            let kk = &inv * &f_red;
            let sq = &(&kk * &kk) + &QMatrix::identity(tdim);
            let c = if sq.is_zero() { Check::pass() } else { Check::fail("K² + 1", &sq) };
            (c, Some(kk))
        }
        None => (Check::fail("transverse ω", "degenerate"), None),
    };
    BraneReport {
        coisotropic,
        curvature_on_leaves,
        transverse_complex,
        leaf_dim,
        transverse_dim: tdim,
        transverse_structure: structure,
    }
}

/// `Σ_j lhs_j x̂_j = Σ_i rhs_i x_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftEquation {
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
}

fn linear_text(coeffs: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in coeffs.iter().zip(names) {
        if num::Zero::is_zero(c) {
            continue;
        }
        let neg = *c < Rational::from_integer(0.into());
        let mag = if neg { -c.clone() } else { c.clone() };
        let sign = match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let coef = if num::One::is_one(&mag) { String::new() } else { format!("{}*", format_rational(&mag)) };
        out.push_str(&format!("{sign}{coef}{name}"));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl LiftEquation {
    pub fn render(&self, t: &SymplecticTorus) -> String {
        let hats: Vec<String> = (0..t.dim()).map(|i| t.dual_name(i)).collect();
        format!("{} = {}", linear_text(&self.lhs, &hats), linear_text(&self.rhs, t.names()))
    }
}

/// `𝐋 = {(x, x̂) : x ∈ C, x̂|_W = -ι_x F̃}` together with its defining
/// equations `Wᵀ x̂ = F̃ W⁺ x`, one per basis vector of `W`.
pub fn lift(t: &SymplecticTorus, b: &CoisotropicBrane) -> Result<(LinearSubtorus, Vec<LiftEquation>), ToriError> {
    let report = is_coisotropic_brane(t, b);
    if let Some((name, _)) = report.checks().into_iter().find(|(_, c)| !c.passed) {
        return Err(ToriError::NotABrane(name));
    }
    let w = &b.basis;
    let (n2, k) = (t.dim(), b.dim());
    let wt = w.transpose();
    // x̂_a solves Wᵀ x̂ = F̃ e_a
    let particular =
        wt.solve_matrix(&b.curvature).ok_or_else(|| ToriError::Shape("restriction to W is not surjective".into()))?;
    let annihilator = wt.kernel();
    let mut cols = Vec::with_capacity(n2);
    for a in 0..k {
        let mut v = w.column(a);
        v.extend(particular.column(a));
        cols.push(v);
    }
    for j in 0..annihilator.cols() {
        let mut v = vec![Rational::from_integer(0.into()); n2];
        v.extend(annihilator.column(j));
        cols.push(v);
    }
    let cols: Vec<Vec<Rational>> = cols.into_iter().map(cleared).collect();
    let basis = QMatrix::from_columns(2 * n2, &cols);
    let mut offset = b.offset.clone();
    offset.extend(vec![Rational::from_integer(0.into()); n2]);

    // W⁺ = (WᵀW)⁻¹Wᵀ is a left inverse of W
    let left_inverse = &(&wt * w).inverse().expect("independent columns") * &wt;
    let rhs = &b.curvature * &left_inverse;
    let equations = (0..k).map(|a| LiftEquation { lhs: w.column(a), rhs: rhs.row(a).to_vec() }).collect();
    let lifted = LinearSubtorus::new(basis, offset)?;
    if !lifted.is_integral() {
        return Err(ToriError::NotIntegral);
    }
    Ok((lifted, equations))
}

/// Rescales a rational vector to a primitive integral one with the same span.
fn cleared(v: Vec<Rational>) -> Vec<Rational> {
    use num::Integer;
    let denom = v.iter().fold(num::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<num::BigInt> = v.iter().map(|x| (x * Rational::from_integer(denom.clone())).to_integer()).collect();
    let g = scaled.iter().fold(num::BigInt::from(0), |acc, x| acc.gcd(x));
    if num::Zero::is_zero(&g) {
        return v;
    }
    scaled.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}
