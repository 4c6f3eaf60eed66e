use std::collections::BTreeMap;

use crate::scalar::{format_rational, int};
use crate::Rational;

/// How the twisted differential in the third homotopy-holomorphic equation
/// acts on `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaTwist {
    /// `δ_I = δ + [I, -]_FN`
    Fn,
    /// `δ_I = δ`
    Plain,
}

/// Sign and normalization table shared by every bracket in the crate.
///
/// The fixed entries are not configurable and are listed by [`Conventions::table`]
/// so that reports record exactly what was computed.
#[derive(Debug, Clone, PartialEq)]
pub struct Conventions {
    /// Overall factor of the Nijenhuis–Richardson bracket.
    pub nr_scale: Rational,
    pub delta_twist: DeltaTwist,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { nr_scale: int(1), delta_twist: DeltaTwist::Fn }
    }
}

impl Conventions {
    pub fn table(&self) -> BTreeMap<String, String> {
        let mut t = BTreeMap::new();
        t.insert("sign_rule".into(), "bigraded: (-1)^(p1*p2 + q1*q2)".into());
        t.insert("form_evaluation".into(), "w(X1,..,Xp) = i_Xp .. i_X1 w".into());
        t.insert("schouten".into(), "[P,Q] = sum dR_(∂i) P * d_i Q - d_i P * dL_(∂i) Q".into());
        t.insert("frolicher_nijenhuis".into(), "[K,L]^a = d_K(L^a) - (-1)^<K,L> d_L(K^a), d_K = [i_K, d]".into());
        t.insert(
            "nijenhuis_richardson".into(),
            "[K,L]^a = s * (i_K(L^a) - (-1)^(|K||L|) i_L(K^a)), |K| = p + q".into(),
        );
        t.insert("nr_scale".into(), format_rational(&self.nr_scale));
        t.insert("anchor".into(), "P#(dx^k) = sum_i P^(ik) ∂_i, with P = 1/2 sum P^(ij) ∂_i ∂_j".into());
        t.insert(
            "delta_twist".into(),
            match self.delta_twist {
                DeltaTwist::Fn => "delta + [I,-]_FN".into(),
                DeltaTwist::Plain => "delta".into(),
            },
        );
        t.insert("minus_one".into(), "-(identity of the tangent complex) in bidegree (1,0)".into());
        t
    }
}
