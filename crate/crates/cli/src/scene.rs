//! Scene file schema. Every rational travels as a `"p/q"` string or an integer.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCENE_SCHEMA: &str = "gcstack-scene/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub schema: String,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub chart: Option<ChartDecl>,
    #[serde(default)]
    pub tensors: BTreeMap<String, TensorDecl>,
    #[serde(default)]
    pub structures: BTreeMap<String, StructureDecl>,
    #[serde(default)]
    pub conventions: Option<ConventionDecl>,
    #[serde(default)]
    pub tasks: Vec<TaskDecl>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDecl {
    pub coordinates: Vec<String>,
}

/// A rational given either as a JSON integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

/// `(exponents of the coordinates, odd generator indices in order, coefficient)`.
/// Odd indices refer to `dx^i` for forms and `∂_i` for multivectors.
pub type Term = (Vec<u32>, Vec<usize>, Number);

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TensorDecl {
    Function {
        terms: Vec<Term>,
    },
    Form {
        terms: Vec<Term>,
    },
    Multivector {
        terms: Vec<Term>,
    },
    /// One list of form terms per coordinate direction `∂_a`.
    VectorValued {
        components: Vec<Vec<Term>>,
    },
    Matrix {
        rows: Vec<Vec<Number>>,
    },
}

impl TensorDecl {
    pub fn kind(&self) -> &'static str {
        match self {
            TensorDecl::Function { .. } => "function",
            TensorDecl::Form { .. } => "form",
            TensorDecl::Multivector { .. } => "multivector",
            TensorDecl::VectorValued { .. } => "vector_valued",
            TensorDecl::Matrix { .. } => "matrix",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StructureDecl {
    /// Exactly one of `symplectic`, `complex`, `blocks`.
    Gc {
        #[serde(default)]
        symplectic: Option<String>,
        #[serde(default)]
        complex: Option<String>,
        #[serde(default)]
        blocks: Option<GcBlocks>,
    },
    /// Exactly one of `poisson`, `tangent`, `explicit`.
    Algebroid {
        #[serde(default)]
        poisson: Option<String>,
        #[serde(default)]
        tangent: bool,
        #[serde(default)]
        explicit: Option<ExplicitAlgebroid>,
    },
    ShiftedForm {
        algebroid: String,
        #[serde(default)]
        scale: Option<Number>,
    },
    Lagrangian {
        algebroid: String,
        #[serde(default)]
        form_scale: Option<Number>,
    },
    Hhs {
        gc: String,
        #[serde(default)]
        homotopy_scale: Option<Number>,
    },
    Foliation {
        hhs: String,
        construction: FoliationConstruction,
        #[serde(default)]
        tangent: Option<String>,
        #[serde(default)]
        fiber: Option<String>,
    },
    Brane {
        #[serde(default)]
        omega: Option<String>,
        #[serde(default)]
        basis: Option<String>,
        #[serde(default)]
        offset: Option<Vec<Number>>,
        curvature: String,
        #[serde(default)]
        curvature_on: CurvatureFrame,
    },
    LinearPair {
        symplectic: String,
        first: String,
        second: String,
    },
}

impl StructureDecl {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureDecl::Gc { .. } => "gc",
            StructureDecl::Algebroid { .. } => "algebroid",
            StructureDecl::ShiftedForm { .. } => "shifted_form",
            StructureDecl::Lagrangian { .. } => "lagrangian",
            StructureDecl::Hhs { .. } => "hhs",
            StructureDecl::Foliation { .. } => "foliation",
            StructureDecl::Brane { .. } => "brane",
            StructureDecl::LinearPair { .. } => "linear_pair",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GcBlocks {
    pub i: String,
    pub p: String,
    pub q: String,
}

/// Entries are rationals or names of `function` tensors.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitAlgebroid {
    pub frame: Vec<String>,
    /// `anchor[i][a]`: component along `∂_i` of the anchor of `e_a`.
    pub anchor: Vec<Vec<Number>>,
    /// `brackets[k][a][b]`: coefficient of `e_k` in `[e_a, e_b]`.
    pub brackets: Vec<Vec<Vec<Number>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FoliationConstruction {
    Symplectic,
    Eigenspaces,
    ConjugateEigenspaces,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvatureFrame {
    /// Curvature is an ambient `2n×2n` matrix restricted to the brane.
    #[default]
    Ambient,
    /// Curvature is already written in the brane basis.
    Brane,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConventionDecl {
    #[serde(default)]
    pub nr_scale: Option<Number>,
    #[serde(default)]
    pub delta_twist: Option<TwistDecl>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistDecl {
    Fn,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TaskKind {
    #[serde(rename = "check-gc")]
    CheckGc,
    #[serde(rename = "check-algebroid")]
    CheckAlgebroid,
    #[serde(rename = "check-shifted")]
    CheckShifted,
    #[serde(rename = "check-lagrangian")]
    CheckLagrangian,
    #[serde(rename = "check-hhs")]
    CheckHhs,
    #[serde(rename = "check-foliation")]
    CheckFoliation,
    #[serde(rename = "lift-brane")]
    LiftBrane,
    #[serde(rename = "intersect")]
    Intersect,
}

impl TaskKind {
    pub const ALL: [TaskKind; 8] = [
        TaskKind::CheckGc,
        TaskKind::CheckAlgebroid,
        TaskKind::CheckShifted,
        TaskKind::CheckLagrangian,
        TaskKind::CheckHhs,
        TaskKind::CheckFoliation,
        TaskKind::LiftBrane,
        TaskKind::Intersect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::CheckGc => "check-gc",
            TaskKind::CheckAlgebroid => "check-algebroid",
            TaskKind::CheckShifted => "check-shifted",
            TaskKind::CheckLagrangian => "check-lagrangian",
            TaskKind::CheckHhs => "check-hhs",
            TaskKind::CheckFoliation => "check-foliation",
            TaskKind::LiftBrane => "lift-brane",
            TaskKind::Intersect => "intersect",
        }
    }

    /// Structure kind a task of this type accepts.
    pub fn structure_kind(self) -> &'static str {
        match self {
            TaskKind::CheckGc => "gc",
            TaskKind::CheckAlgebroid => "algebroid",
            TaskKind::CheckShifted => "shifted_form",
            TaskKind::CheckLagrangian => "lagrangian",
            TaskKind::CheckHhs => "hhs",
            TaskKind::CheckFoliation => "foliation",
            TaskKind::LiftBrane => "brane",
            TaskKind::Intersect => "linear_pair",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDecl {
    #[serde(default)]
    pub name: Option<String>,
    pub task: TaskKind,
    pub target: String,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub conventions: Option<ConventionDecl>,
}
