//! Turns a parsed scene into exact objects and rejects unresolved or ill-typed names.

use std::collections::BTreeMap;
use std::sync::Arc;

use gcstack::cartan::{CartanChart, Conventions, DeltaTwist, Form, MultiVector, VectorValuedForm};
use gcstack::scalar::parse_rational;
use gcstack::{Element, QMatrix, Rational};

use crate::scene::{
    ConventionDecl, CurvatureFrame, FoliationConstruction, Number, Scene, StructureDecl, TaskKind, TensorDecl, Term,
    TwistDecl, SCENE_SCHEMA,
};
use crate::SceneError;

#[derive(Clone, Debug)]
pub enum Tensor {
    Function(Element),
    Form(Form),
    Multivector(MultiVector),
    VectorValued(VectorValuedForm),
    Matrix(QMatrix),
}

impl Tensor {
    fn kind(&self) -> &'static str {
        match self {
            Tensor::Function(_) => "function",
            Tensor::Form(_) => "form",
            Tensor::Multivector(_) => "multivector",
            Tensor::VectorValued(_) => "vector_valued",
            Tensor::Matrix(_) => "matrix",
        }
    }
}

/// A scene whose names all resolve; structures are still declarations and are
/// instantiated per task.
#[derive(Debug)]
pub struct Resolved {
    pub name: String,
    pub space: Option<Arc<CartanChart>>,
    pub tensors: BTreeMap<String, Tensor>,
    pub structures: BTreeMap<String, StructureDecl>,
    pub conventions: Conventions,
    pub tasks: Vec<ResolvedTask>,
}

#[derive(Clone, Debug)]
pub struct ResolvedTask {
    pub name: String,
    pub kind: TaskKind,
    pub target: String,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub conventions: Conventions,
}

fn invalid(location: impl Into<String>, message: impl std::fmt::Display) -> SceneError {
    SceneError::Invalid { location: location.into(), message: message.to_string() }
}

pub fn number(n: &Number, location: &str) -> Result<Rational, SceneError> {
    match n {
        Number::Int(v) => Ok(Rational::from_integer((*v).into())),
        Number::Text(s) => parse_rational(s).map_err(|e| invalid(location, e)),
    }
}

pub fn apply_conventions(base: &Conventions, decl: &ConventionDecl, location: &str) -> Result<Conventions, SceneError> {
    let mut c = base.clone();
    if let Some(s) = &decl.nr_scale {
        c.nr_scale = number(s, &format!("{location}.nr_scale"))?;
    }
    if let Some(t) = decl.delta_twist {
        c.delta_twist = match t {
            TwistDecl::Fn => DeltaTwist::Fn,
            TwistDecl::Plain => DeltaTwist::Plain,
        };
    }
    Ok(c)
}

fn element(space: &Arc<CartanChart>, terms: &[Term], odd: Option<bool>, location: &str) -> Result<Element, SceneError> {
    let chart = space.chart();
    let n = space.dim();
    let mut out = space.zero();
    for (t, (exps, odds, coeff)) in terms.iter().enumerate() {
        let loc = format!("{location}.terms[{t}]");
        if !exps.is_empty() && exps.len() != n {
            return Err(invalid(&loc, format!("expected {n} exponents, found {}", exps.len())));
        }
        let mut mono = vec![0u32; chart.len()];
        mono[..exps.len()].copy_from_slice(exps);
        let c = number(coeff, &format!("{loc}.coefficient"))?;
        let mut e = Element::from_terms(chart, [(mono, c)]).map_err(|e| invalid(&loc, e))?;
        for &i in odds {
            if i >= n {
                return Err(invalid(&loc, format!("odd index {i} out of range for {n} coordinates")));
            }
            let g = match odd {
                None => return Err(invalid(&loc, "functions take no odd generators")),
                Some(false) => space.diff(i),
                Some(true) => space.vector_symbol(i).map_err(|e| invalid(&loc, e))?,
            };
            e = &e * &g;
        }
        out = &out + &e;
    }
    Ok(out)
}

fn tensor(space: Option<&Arc<CartanChart>>, decl: &TensorDecl, location: &str) -> Result<Tensor, SceneError> {
    if let TensorDecl::Matrix { rows } = decl {
        let width = rows.first().map_or(0, Vec::len);
        let mut m = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(invalid(format!("{location}.rows[{i}]"), "rows have different lengths"));
            }
            let parsed: Result<Vec<Rational>, _> =
                row.iter().enumerate().map(|(j, v)| number(v, &format!("{location}.rows[{i}][{j}]"))).collect();
            m.push(parsed?);
        }
        return Ok(Tensor::Matrix(QMatrix::from_rows(m)));
    }
    let space = space.ok_or_else(|| invalid(location, "symbolic tensors need a chart declaration"))?;
    let wrap = |e| invalid(location, e);
    Ok(match decl {
        TensorDecl::Function { terms } => Tensor::Function(element(space, terms, None, location)?),
        TensorDecl::Form { terms } => {
            Tensor::Form(Form::new(space, element(space, terms, Some(false), location)?).map_err(wrap)?)
        }
        TensorDecl::Multivector { terms } => {
            Tensor::Multivector(MultiVector::new(space, element(space, terms, Some(true), location)?).map_err(wrap)?)
        }
        TensorDecl::VectorValued { components } => {
            let comps: Result<Vec<Element>, _> = components
                .iter()
                .enumerate()
                .map(|(a, t)| element(space, t, Some(false), &format!("{location}.components[{a}]")))
                .collect();
            Tensor::VectorValued(VectorValuedForm::new(space, comps?).map_err(wrap)?)
        }
        TensorDecl::Matrix { .. } => unreachable!(),
    })
}

struct Checker<'a> {
    scene: &'a Scene,
    tensors: &'a BTreeMap<String, Tensor>,
    dim: Option<usize>,
}

impl Checker<'_> {
    fn tensor(&self, name: &str, kinds: &[&str], location: &str) -> Result<&Tensor, SceneError> {
        let t = self.tensors.get(name).ok_or_else(|| invalid(location, format!("undefined tensor {name:?}")))?;
        if !kinds.contains(&t.kind()) {
            return Err(invalid(
                location,
                format!("tensor {name:?} is a {}, expected {}", t.kind(), kinds.join(" or ")),
            ));
        }
        Ok(t)
    }

    fn square(&self, name: &str, size: Option<usize>, location: &str) -> Result<(), SceneError> {
        if let Tensor::Matrix(m) = self.tensor(name, &["matrix"], location)? {
            let want = size.unwrap_or(m.rows());
            if m.rows() != want || m.cols() != want {
                return Err(invalid(location, format!("matrix {name:?} must be {want}x{want}")));
            }
        }
        Ok(())
    }

    fn chart_dim(&self, location: &str) -> Result<usize, SceneError> {
        self.dim.ok_or_else(|| invalid(location, "structure needs a chart declaration"))
    }

    fn structure(&self, name: &str, kind: &str, location: &str) -> Result<(), SceneError> {
        let s = self
            .scene
            .structures
            .get(name)
            .ok_or_else(|| invalid(location, format!("undefined structure {name:?}")))?;
        if s.kind() != kind {
            return Err(invalid(location, format!("structure {name:?} is a {}, expected {kind}", s.kind())));
        }
        Ok(())
    }

    fn scalar(&self, n: &Number, location: &str) -> Result<(), SceneError> {
        match n {
            Number::Text(s) if parse_rational(s).is_err() => self.tensor(s, &["function"], location).map(|_| ()),
            other => number(other, location).map(|_| ()),
        }
    }

    fn check(&self, name: &str, decl: &StructureDecl) -> Result<(), SceneError> {
        let loc = format!("structures.{name}");
        let at = |field: &str| format!("{loc}.{field}");
        match decl {
            StructureDecl::Gc { symplectic, complex, blocks } => {
                let n = self.chart_dim(&loc)?;
                match (symplectic, complex, blocks) {
                    (Some(w), None, None) => {
                        if let Tensor::Matrix(_) = self.tensor(w, &["matrix", "form"], &at("symplectic"))? {
                            self.square(w, Some(n), &at("symplectic"))?;
                        }
                    }
                    (None, Some(i), None) => {
                        if let Tensor::Matrix(_) = self.tensor(i, &["matrix", "vector_valued"], &at("complex"))? {
                            self.square(i, Some(n), &at("complex"))?;
                        }
                    }
                    (None, None, Some(b)) => {
                        for (field, t) in [("blocks.i", &b.i), ("blocks.p", &b.p), ("blocks.q", &b.q)] {
                            self.square(t, Some(n), &at(field))?;
                        }
                    }
                    _ => return Err(invalid(&loc, "give exactly one of symplectic, complex, blocks")),
                }
            }
            StructureDecl::Algebroid { poisson, tangent, explicit } => {
                let n = self.chart_dim(&loc)?;
                match (poisson, tangent, explicit) {
                    (Some(p), false, None) => {
                        if let Tensor::Matrix(_) = self.tensor(p, &["multivector", "matrix"], &at("poisson"))? {
                            self.square(p, Some(n), &at("poisson"))?;
                        }
                    }
                    (None, true, None) => {}
                    (None, false, Some(e)) => {
                        let r = e.frame.len();
                        if e.anchor.len() != n || e.anchor.iter().any(|row| row.len() != r) {
                            return Err(invalid(at("explicit.anchor"), format!("anchor must be {n}x{r}")));
                        }
                        if e.brackets.len() != r || e.brackets.iter().flatten().any(|row| row.len() != r) {
                            return Err(invalid(at("explicit.brackets"), format!("brackets must be {r}x{r}x{r}")));
                        }
                        for (i, row) in e.anchor.iter().enumerate() {
                            for (a, v) in row.iter().enumerate() {
                                self.scalar(v, &at(&format!("explicit.anchor[{i}][{a}]")))?;
                            }
                        }
                        for (k, m) in e.brackets.iter().enumerate() {
                            if m.len() != r {
                                return Err(invalid(at("explicit.brackets"), format!("brackets must be {r}x{r}x{r}")));
                            }
                            for (a, row) in m.iter().enumerate() {
                                for (b, v) in row.iter().enumerate() {
                                    self.scalar(v, &at(&format!("explicit.brackets[{k}][{a}][{b}]")))?;
                                }
                            }
                        }
                    }
                    _ => return Err(invalid(&loc, "give exactly one of poisson, tangent, explicit")),
                }
            }
            StructureDecl::ShiftedForm { algebroid, scale } => {
                self.structure(algebroid, "algebroid", &at("algebroid"))?;
                if let Some(s) = scale {
                    number(s, &at("scale"))?;
                }
            }
            StructureDecl::Lagrangian { algebroid, form_scale } => {
                self.structure(algebroid, "algebroid", &at("algebroid"))?;
                if let Some(s) = form_scale {
                    number(s, &at("form_scale"))?;
                }
            }
            StructureDecl::Hhs { gc, homotopy_scale } => {
                self.structure(gc, "gc", &at("gc"))?;
                if let Some(s) = homotopy_scale {
                    number(s, &at("homotopy_scale"))?;
                }
            }
            StructureDecl::Foliation { hhs, construction, tangent, fiber } => {
                self.structure(hhs, "hhs", &at("hhs"))?;
                if *construction != FoliationConstruction::Symplectic {
                    let (t, f) = tangent
                        .as_ref()
                        .zip(fiber.as_ref())
                        .ok_or_else(|| invalid(&loc, "eigenspace constructions need tangent and fiber matrices"))?;
                    self.square(t, None, &at("tangent"))?;
                    self.square(f, None, &at("fiber"))?;
                }
            }
            StructureDecl::Brane { omega, basis, offset, curvature, curvature_on } => {
                let n = match omega {
                    Some(w) => {
                        self.square(w, None, &at("omega"))?;
                        match &self.tensors[w] {
                            Tensor::Matrix(m) => m.rows(),
                            _ => unreachable!(),
                        }
                    }
                    None => self.chart_dim(&loc)?,
                };
                let k = match basis {
                    Some(b) => match self.tensor(b, &["matrix"], &at("basis"))? {
                        Tensor::Matrix(m) if m.rows() == n => m.cols(),
                        _ => return Err(invalid(at("basis"), format!("basis needs {n} rows"))),
                    },
                    None => n,
                };
                if let Some(o) = offset {
                    if o.len() != n {
                        return Err(invalid(at("offset"), format!("offset needs {n} entries")));
                    }
                    for (i, v) in o.iter().enumerate() {
                        number(v, &at(&format!("offset[{i}]")))?;
                    }
                }
                let want = if *curvature_on == CurvatureFrame::Ambient { n } else { k };
                self.square(curvature, Some(want), &at("curvature"))?;
            }
            StructureDecl::LinearPair { symplectic, first, second } => {
                self.square(symplectic, None, &at("symplectic"))?;
                let Tensor::Matrix(w) = &self.tensors[symplectic] else { unreachable!() };
                for (field, t) in [("first", first), ("second", second)] {
                    match self.tensor(t, &["matrix"], &at(field))? {
                        Tensor::Matrix(m) if m.rows() == w.rows() => {}
                        _ => return Err(invalid(at(field), format!("needs {} rows", w.rows()))),
                    }
                }
            }
        }
        Ok(())
    }
}

/// Type-checks a scene. Conventions layer as scene, then task, then command line.
pub fn resolve(scene: &Scene, cli_conventions: Option<&ConventionDecl>) -> Result<Resolved, SceneError> {
    if scene.schema != SCENE_SCHEMA {
        return Err(invalid("schema", format!("unsupported schema {:?}, expected {SCENE_SCHEMA:?}", scene.schema)));
    }
    let space = match &scene.chart {
        Some(c) => {
            let refs: Vec<&str> = c.coordinates.iter().map(String::as_str).collect();
            Some(CartanChart::ordinary(&refs).map_err(|e| invalid("chart", e))?)
        }
        None => None,
    };
    let mut tensors = BTreeMap::new();
    for (name, decl) in &scene.tensors {
        tensors.insert(name.clone(), tensor(space.as_ref(), decl, &format!("tensors.{name}"))?);
    }
    let checker = Checker { scene, tensors: &tensors, dim: space.as_ref().map(|s| s.dim()) };
    for (name, decl) in &scene.structures {
        checker.check(name, decl)?;
    }

    let mut conventions = Conventions::default();
    if let Some(c) = &scene.conventions {
        conventions = apply_conventions(&conventions, c, "conventions")?;
    }
    if let Some(c) = cli_conventions {
        conventions = apply_conventions(&conventions, c, "--convention")?;
    }

    let mut tasks = Vec::with_capacity(scene.tasks.len());
    for (i, t) in scene.tasks.iter().enumerate() {
        let loc = format!("tasks[{i}]");
        checker.structure(&t.target, t.task.structure_kind(), &format!("{loc}.target"))?;
        let mut c = conventions.clone();
        if let Some(decl) = &t.conventions {
            c = apply_conventions(&c, decl, &format!("{loc}.conventions"))?;
        }
        if let Some(decl) = cli_conventions {
            c = apply_conventions(&c, decl, "--convention")?;
        }
        tasks.push(ResolvedTask {
            name: t.name.clone().unwrap_or_else(|| format!("{}:{}", t.task.name(), t.target)),
            kind: t.task,
            target: t.target.clone(),
            seed: t.seed,
            samples: t.samples,
            conventions: c,
        });
    }
    Ok(Resolved {
        name: scene.name.clone().unwrap_or_default(),
        space,
        tensors,
        structures: scene.structures.clone(),
        conventions,
        tasks,
    })
}
