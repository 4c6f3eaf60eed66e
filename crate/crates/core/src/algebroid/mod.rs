//! Lie algebroids given by anchor matrices and structure functions.

mod ce;
mod poisson;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

pub use ce::{ce_differential, ce_square_residuals, CeModel};
pub use poisson::{conormal_algebroid, is_coisotropic, poisson_algebroid};

use crate::cartan::{schouten, CartanChart, CartanError, MultiVector};
use crate::random;
use crate::report::{Check, Residuals, Summary};
use crate::symcore::Side;
use crate::{Element, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebroidError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("bivector is not Poisson: [P,P] = {0}")]
    NotPoisson(String),
    #[error("subspace is not coisotropic")]
    NotCoisotropic,
    #[error("{0}")]
    Shape(String),
}

/// Frame `e_1..e_r` over an ordinary chart with anchor `ρ(e_a) = sum_i rho[i][a] ∂_i`
/// and brackets `[e_a, e_b] = sum_k c[k][a][b] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebroid {
    space: Arc<CartanChart>,
    frame: Vec<String>,
    anchor: Vec<Vec<Element>>,
    structure: Vec<Vec<Vec<Element>>>,
}

/// A section `sum_a s^a e_a`.
pub type Section = Vec<Element>;

fn is_function(space: &CartanChart, e: &Element) -> bool {
    e.terms().keys().all(|m| m[space.dim()..].iter().all(|&k| k == 0))
}

impl LieAlgebroid {
    pub fn new(
        space: &Arc<CartanChart>,
        frame: Vec<String>,
        anchor: Vec<Vec<Element>>,
        structure: Vec<Vec<Vec<Element>>>,
    ) -> Result<Self, AlgebroidError> {
        let (n, r) = (space.dim(), frame.len());
        if !space.has_multivectors() {
            return Err(AlgebroidError::Shape("base chart needs vector symbols".into()));
        }
        if anchor.len() != n || anchor.iter().any(|row| row.len() != r) {
            return Err(AlgebroidError::Shape(format!("anchor must be {n}x{r}")));
        }
        if structure.len() != r || structure.iter().any(|m| m.len() != r || m.iter().any(|row| row.len() != r)) {
            return Err(AlgebroidError::Shape(format!("structure functions must be {r}x{r}x{r}")));
        }
        for e in anchor.iter().flatten().chain(structure.iter().flatten().flatten()) {
            space.check(e)?;
            if !is_function(space, e) {
                return Err(AlgebroidError::Shape("anchor and structure entries must be functions".into()));
            }
        }
        Ok(LieAlgebroid { space: space.clone(), frame, anchor, structure })
    }

    /// `T X` with the coordinate frame.
    pub fn tangent(space: &Arc<CartanChart>) -> Result<Self, AlgebroidError> {
        let n = space.dim();
        let anchor =
            (0..n).map(|i| (0..n).map(|a| space.constant(Rational::from_integer((i == a).into()))).collect()).collect();
        let frame = (0..n).map(|i| format!("∂{}", space.coord_name(i))).collect();
        Self::new(space, frame, anchor, vec![vec![vec![space.zero(); n]; n]; n])
    }

    /// Rank `r` bundle with zero anchor and zero bracket.
    pub fn abelian(space: &Arc<CartanChart>, r: usize) -> Result<Self, AlgebroidError> {
        let frame = (1..=r).map(|a| format!("e{a}")).collect();
        Self::new(space, frame, vec![vec![space.zero(); r]; space.dim()], vec![vec![vec![space.zero(); r]; r]; r])
    }

    /// Lie algebra with constants `c[k][a][b]` over `space`, zero anchor.
    pub fn from_structure_constants(
        space: &Arc<CartanChart>,
        constants: &[Vec<Vec<Rational>>],
    ) -> Result<Self, AlgebroidError> {
        let r = constants.len();
        let frame = (1..=r).map(|a| format!("e{a}")).collect();
        let structure = constants
            .iter()
            .map(|m| m.iter().map(|row| row.iter().map(|c| space.constant(c.clone())).collect()).collect())
            .collect();
        Self::new(space, frame, vec![vec![space.zero(); r]; space.dim()], structure)
    }

    pub fn space(&self) -> &Arc<CartanChart> {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.frame.len()
    }

    pub fn frame(&self) -> &[String] {
        &self.frame
    }

    /// `rho[i][a]`, the `∂_i` component of `ρ(e_a)`.
    pub fn anchor(&self) -> &[Vec<Element>] {
        &self.anchor
    }

    /// `c[k][a][b]`.
    pub fn structure(&self) -> &[Vec<Vec<Element>>] {
        &self.structure
    }

    pub fn frame_section(&self, a: usize) -> Section {
        (0..self.rank()).map(|b| self.space.constant(Rational::from_integer((a == b).into()))).collect()
    }

    pub fn anchor_of(&self, s: &Section) -> MultiVector {
        let comps: Vec<Element> = self
            .anchor
            .iter()
            .map(|row| row.iter().zip(s).fold(self.space.zero(), |acc, (r, c)| &acc + &(r * c)))
            .collect();
        MultiVector::vector_field(&self.space, &comps).expect("anchor image")
    }

    /// `[s,t]^k = s^a t^b c^k_ab + ρ(s)(t^k) - ρ(t)(s^k)`.
    pub fn bracket(&self, s: &Section, t: &Section) -> Section {
        let (rs, rt) = (self.anchor_of(s), self.anchor_of(t));
        (0..self.rank())
            .map(|k| {
                let mut acc = &rs.apply_to(&t[k]).expect("function") - &rt.apply_to(&s[k]).expect("function");
                for a in 0..self.rank() {
                    for b in 0..self.rank() {
                        acc = &acc + &(&(&s[a] * &t[b]) * &self.structure[k][a][b]);
                    }
                }
                acc
            })
            .collect()
    }
}

fn render_section(s: &Section, frame: &[String]) -> String {
    let parts: Vec<String> =
        s.iter().zip(frame).filter(|(c, _)| !c.is_zero()).map(|(c, e)| format!("({c})*{e}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn add(a: &Section, b: &Section) -> Section {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub antisymmetry: Check,
    pub anchor_morphism: Check,
    pub leibniz: Check,
    pub jacobi: Check,
}

impl Summary for AxiomReport {
    fn checks(&self) -> Vec<(String, Check)> {
        vec![
            ("antisymmetry".into(), self.antisymmetry.clone()),
            ("anchor_morphism".into(), self.anchor_morphism.clone()),
            ("leibniz".into(), self.leibniz.clone()),
            ("jacobi".into(), self.jacobi.clone()),
        ]
    }
}

/// Axiom check on frame sections plus two random polynomial sections.
pub fn check_axioms(a: &LieAlgebroid) -> AxiomReport {
    check_axioms_with(a, &mut random::seeded(0), 2)
}

/// Frame sections are always checked; `samples` extra triples of sections with
/// random polynomial coefficients exercise Leibniz and Jacobi off the frame.
pub fn check_axioms_with<R: Rng>(a: &LieAlgebroid, rng: &mut R, samples: usize) -> AxiomReport {
    let r = a.rank();
    let s = &a.space;
    let mut anti = Residuals::new();
    for k in 0..r {
        for x in 0..r {
            for y in x..r {
                let v = &a.structure[k][x][y] + &a.structure[k][y][x];
                anti.push_if(!v.is_zero(), format!("c^{k}_({x},{y})"), &v);
            }
        }
    }
    let mut morph = Residuals::new();
    for x in 0..r {
        for y in x + 1..r {
            let (ex, ey) = (a.frame_section(x), a.frame_section(y));
            let lhs = a.anchor_of(&a.bracket(&ex, &ey));
            let rhs = schouten(&a.anchor_of(&ex), &a.anchor_of(&ey)).expect("same chart");
            let diff = &lhs - &rhs;
            morph.push_if(!diff.is_zero(), format!("({},{})", a.frame[x], a.frame[y]), diff.element());
        }
    }
    let mut jac = Residuals::new();
    let jacobiator = |u: &Section, v: &Section, w: &Section| {
        let t1 = a.bracket(&a.bracket(u, v), w);
        let t2 = a.bracket(&a.bracket(v, w), u);
        let t3 = a.bracket(&a.bracket(w, u), v);
        add(&add(&t1, &t2), &t3)
    };
    for x in 0..r {
        for y in x + 1..r {
            for z in y + 1..r {
                let j = jacobiator(&a.frame_section(x), &a.frame_section(y), &a.frame_section(z));
                let bad = j.iter().any(|c| !c.is_zero());
                jac.push_if(
                    bad,
                    format!("({},{},{})", a.frame[x], a.frame[y], a.frame[z]),
                    render_section(&j, &a.frame),
                );
            }
        }
    }
    let mut leib = Residuals::new();
    let section = |rng: &mut R| -> Section { (0..r).map(|_| random::polynomial(rng, s, 1, 2)).collect() };
    for n in 0..samples {
        let (u, v, w) = (section(rng), section(rng), section(rng));
        let f = random::polynomial(rng, s, 2, 3);
        let fv: Section = v.iter().map(|c| &f * c).collect();
        let lhs = a.bracket(&u, &fv);
        let rho_f = a.anchor_of(&u).apply_to(&f).expect("function");
        let rhs: Section = a.bracket(&u, &v).iter().zip(&v).map(|(b, c)| &(&f * b) + &(&rho_f * c)).collect();
        let diff: Section = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
        leib.push_if(diff.iter().any(|c| !c.is_zero()), format!("sample {n}"), render_section(&diff, &a.frame));
        if r > 0 {
            let j = jacobiator(&u, &v, &w);
            jac.push_if(j.iter().any(|c| !c.is_zero()), format!("sample {n}"), render_section(&j, &a.frame));
        }
    }
    AxiomReport {
        antisymmetry: anti.into_check(),
        anchor_morphism: morph.into_check(),
        leibniz: leib.into_check(),
        jacobi: jac.into_check(),
    }
}

/// Anchor and structure functions rendered for reports.
pub fn describe(a: &LieAlgebroid) -> BTreeMap<String, String> {
    let mut d = BTreeMap::new();
    d.insert("rank".into(), a.rank().to_string());
    for (i, row) in a.anchor.iter().enumerate() {
        for (x, e) in row.iter().enumerate() {
            if !e.is_zero() {
                d.insert(format!("anchor {} -> ∂{}", a.frame[x], a.space.coord_name(i)), e.to_string());
            }
        }
    }
    for k in 0..a.rank() {
        for x in 0..a.rank() {
            for y in x + 1..a.rank() {
                let c = &a.structure[k][x][y];
                if !c.is_zero() {
                    d.insert(format!("[{},{}] along {}", a.frame[x], a.frame[y], a.frame[k]), c.to_string());
                }
            }
        }
    }
    d
}

pub(crate) fn derive_coord(e: &Element, i: usize) -> Element {
    e.derive_at(i, Side::Left)
}
