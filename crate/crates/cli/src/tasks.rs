//! Instantiates structures and runs one task.

use std::collections::{BTreeMap, HashMap};

use gcstack::algebroid::{
    ce_square_residuals, check_axioms_with, describe, poisson_algebroid, AlgebroidError, CeModel, LieAlgebroid,
};
use gcstack::cartan::{MultiVector, VectorValuedForm};
use gcstack::gencomplex::{gc_check, GCStructure};
use gcstack::holostack::{check_foliation_with, check_hhs_with, hhs_from_gc, FoliationCandidate, HHStructure};
use gcstack::report::{Check, Summary};
use gcstack::scalar::format_rational;
use gcstack::stacky::{
    canonical_one_shifted, check_lagrangian_with, check_nondegenerate_with, lagrangian_intersection, sample_points,
    tangent_complex, GradedMap, IsotropicStructure, LinearComplex, LinearLagrangian, Pairing, ShiftedTwoForm, StackMap,
};
use gcstack::tori::{
    is_coisotropic_brane, is_complex_in_double, is_lagrangian_in_double, lift, CoisotropicBrane, DoubledTorus,
    SymplecticTorus,
};
use gcstack::{random, Element, QMatrix, Rational};

use crate::report::{CheckReport, TaskReport};
use crate::resolve::{number, Resolved, ResolvedTask, Tensor};
use crate::scene::{CurvatureFrame, FoliationConstruction, Number, StructureDecl, TaskKind};

type Outcome<T> = Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Collected output of one task before it is wrapped in a [`TaskReport`].
#[derive(Default)]
struct Output {
    checks: Vec<CheckReport>,
    details: BTreeMap<String, String>,
    points: Vec<HashMap<String, Rational>>,
}

impl Output {
    fn summary(&mut self, prefix: &str, s: &dyn Summary) {
        self.checks.extend(CheckReport::from_summary(prefix, s));
        for (k, v) in s.details() {
            let key = if prefix.is_empty() { k } else { format!("{prefix}.{k}") };
            self.details.insert(key, v);
        }
    }

    fn check(&mut self, name: &str, c: &Check) {
        self.checks.push(CheckReport::new(name, c));
    }
}

struct Env<'a> {
    scene: &'a Resolved,
    seed: u64,
    samples: usize,
}

impl Env<'_> {
    fn matrix(&self, name: &str) -> &QMatrix {
        match &self.scene.tensors[name] {
            Tensor::Matrix(m) => m,
            _ => unreachable!("checked during resolution"),
        }
    }

    fn decl(&self, name: &str) -> &StructureDecl {
        &self.scene.structures[name]
    }

    fn space(&self) -> &std::sync::Arc<gcstack::cartan::CartanChart> {
        self.scene.space.as_ref().expect("checked during resolution")
    }

    fn scalar(&self, n: &Number) -> Outcome<Element> {
        match n {
            Number::Text(s) if self.scene.tensors.contains_key(s) => match &self.scene.tensors[s] {
                Tensor::Function(e) => Ok(e.clone()),
                _ => unreachable!(),
            },
            other => Ok(self.space().constant(number(other, "").map_err(err)?)),
        }
    }

    fn gc(&self, name: &str) -> Outcome<GCStructure> {
        let StructureDecl::Gc { symplectic, complex, blocks } = self.decl(name) else { unreachable!() };
        let space = self.space();
        if let Some(w) = symplectic {
            return match &self.scene.tensors[w] {
                Tensor::Matrix(m) => GCStructure::from_symplectic_matrix(space, m),
                Tensor::Form(f) => GCStructure::from_symplectic(f),
                _ => unreachable!(),
            }
            .map_err(err);
        }
        if let Some(i) = complex {
            return match &self.scene.tensors[i] {
                Tensor::Matrix(m) => GCStructure::from_complex_matrix(space, m),
                Tensor::VectorValued(k) => GCStructure::from_complex(k),
                _ => unreachable!(),
            }
            .map_err(err);
        }
        let b = blocks.as_ref().expect("checked during resolution");
        GCStructure::from_constant_blocks(space, self.matrix(&b.i), self.matrix(&b.p), self.matrix(&b.q)).map_err(err)
    }

    /// Poisson bivector of an algebroid declared by one.
    fn bivector(&self, name: &str) -> Outcome<Option<MultiVector>> {
        let StructureDecl::Algebroid { poisson: Some(p), .. } = self.decl(name) else {
            return Ok(None);
        };
        Ok(Some(match &self.scene.tensors[p] {
            Tensor::Multivector(m) => m.clone(),
            Tensor::Matrix(m) => MultiVector::from_constant_bivector(self.space(), m).map_err(err)?,
            _ => unreachable!(),
        }))
    }

    fn algebroid(&self, name: &str) -> Outcome<LieAlgebroid> {
        if let Some(p) = self.bivector(name)? {
            return poisson_algebroid(&p).map_err(err);
        }
        let StructureDecl::Algebroid { explicit, .. } = self.decl(name) else { unreachable!() };
        let space = self.space();
        if let Some(e) = explicit {
            let anchor = e
                .anchor
                .iter()
                .map(|row| row.iter().map(|v| self.scalar(v)).collect::<Outcome<Vec<_>>>())
                .collect::<Outcome<Vec<_>>>()?;
            let structure = e
                .brackets
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|row| row.iter().map(|v| self.scalar(v)).collect::<Outcome<Vec<_>>>())
                        .collect::<Outcome<Vec<_>>>()
                })
                .collect::<Outcome<Vec<_>>>()?;
            return LieAlgebroid::new(space, e.frame.clone(), anchor, structure).map_err(err);
        }
        LieAlgebroid::tangent(space).map_err(err)
    }

    fn shifted(&self, algebroid: &str, scale: Option<&Number>) -> Outcome<ShiftedTwoForm> {
        let form = canonical_one_shifted(&self.algebroid(algebroid)?).map_err(err)?;
        Ok(match scale {
            Some(s) => form.scale(&number(s, "").map_err(err)?),
            None => form,
        })
    }

    fn hhs(&self, name: &str, out: &mut Output) -> Outcome<HHStructure> {
        let StructureDecl::Hhs { gc, homotopy_scale } = self.decl(name) else { unreachable!() };
        let derived = hhs_from_gc(&self.gc(gc)?).map_err(err)?;
        out.details.insert("second_order.solved".into(), derived.solved.to_string());
        out.details.insert("second_order.ansatz_degree".into(), derived.ansatz_degree.to_string());
        if !derived.unsolved.is_empty() {
            out.details.insert("second_order.unsolved".into(), derived.unsolved.join("; "));
        }
        let h = derived.structure;
        match homotopy_scale {
            None => Ok(h),
            Some(s) => {
                let c = number(s, "").map_err(err)?;
                let scaled: Vec<VectorValuedForm> = h.homotopy_parts().iter().map(|q| q.scale(&c)).collect();
                HHStructure::new(h.model(), h.complex_parts().to_vec(), scaled).map_err(err)
            }
        }
    }

    fn points(&self, model: &CeModel) -> Vec<HashMap<String, Rational>> {
        sample_points(model.algebroid().space(), self.seed, self.samples)
    }
}

fn check_gc(env: &Env, target: &str, out: &mut Output) -> Outcome<()> {
    let report = gc_check(&env.gc(target)?).map_err(err)?;
    out.summary("", &report);
    Ok(())
}

fn check_algebroid(env: &Env, target: &str, out: &mut Output) -> Outcome<()> {
    if let Some(p) = env.bivector(target)? {
        match poisson_algebroid(&p) {
            Err(AlgebroidError::NotPoisson(residual)) => {
                out.check("poisson", &Check::fail("[P,P]", residual));
                return Ok(());
            }
            Err(e) => return Err(err(e)),
            Ok(_) => out.check("poisson", &Check::pass()),
        }
    }
    let a = env.algebroid(target)?;
    let mut rng = random::seeded(env.seed);
    out.summary("", &check_axioms_with(&a, &mut rng, env.samples));
    let model = CeModel::new(&a).map_err(err)?;
    out.check("ce_square", &ce_square_residuals(&model));
    out.details.extend(describe(&a));
    Ok(())
}

fn check_shifted(env: &Env, target: &str, out: &mut Output) -> Outcome<()> {
    let StructureDecl::ShiftedForm { algebroid, scale } = env.decl(target) else { unreachable!() };
    let form = env.shifted(algebroid, scale.as_ref())?;
    out.check("closure", &form.closure().map_err(err)?);
    let t = tangent_complex(form.model().algebroid());
    out.check("nondegeneracy", &check_nondegenerate_with(&form, &t, env.seed, env.samples).map_err(err)?);
    out.details.insert("shift".into(), form.shift().to_string());
    out.points = env.points(form.model());
    Ok(())
}

fn check_lagrangian(env: &Env, target: &str, out: &mut Output) -> Outcome<()> {
    let StructureDecl::Lagrangian { algebroid, form_scale } = env.decl(target) else { unreachable!() };
    let form = env.shifted(algebroid, form_scale.as_ref())?;
    let atlas = StackMap::atlas(form.model()).map_err(err)?;
    let report =
        check_lagrangian_with(&atlas, &form, &IsotropicStructure::zero(), env.seed, env.samples).map_err(err)?;
    out.summary("", &report);
    out.details.insert("map".into(), "atlas".into());
    out.details.insert("gamma".into(), "0".into());
    out.points = env.points(form.model());
    Ok(())
}

fn check_hhs(env: &Env, task: &ResolvedTask, out: &mut Output) -> Outcome<()> {
    let h = env.hhs(&task.target, out)?;
    let report = check_hhs_with(&h, &task.conventions).map_err(err)?;
    out.checks.extend(CheckReport::from_summary("", &report));
    Ok(())
}

fn check_foliation(env: &Env, target: &str, out: &mut Output) -> Outcome<()> {
    let StructureDecl::Foliation { hhs, construction, tangent, fiber } = env.decl(target) else { unreachable!() };
    let h = env.hhs(hhs, out)?;
    let candidate = match construction {
        FoliationConstruction::Symplectic => FoliationCandidate::symplectic_canonical(h.model()),
        FoliationConstruction::Eigenspaces | FoliationConstruction::ConjugateEigenspaces => {
            let (t, f) = (tangent.as_ref().expect("checked"), fiber.as_ref().expect("checked"));
            let base = FoliationCandidate::eigenspaces(h.model(), env.matrix(t), env.matrix(f));
            if *construction == FoliationConstruction::ConjugateEigenspaces {
                base.map(|c| c.conjugate())
            } else {
                base
            }
        }
    }
    .map_err(err)?;
    out.summary("", &check_foliation_with(&candidate, &h, env.seed, env.samples).map_err(err)?);
    out.points = env.points(h.model());
    Ok(())
}

fn torus_names(env: &Env, n: usize) -> Vec<String> {
    match &env.scene.space {
        Some(s) if s.dim() == n => (0..n).map(|i| s.coord_name(i).to_string()).collect(),
        _ => SymplecticTorus::standard(n / 2).names().to_vec(),
    }
}

fn lift_brane(env: &Env, target: &str, out: &mut Output) -> Outcome<()> {
    let StructureDecl::Brane { omega, basis, offset, curvature, curvature_on } = env.decl(target) else {
        unreachable!()
    };
    let n = match omega {
        Some(w) => env.matrix(w).rows(),
        None => env.space().dim(),
    };
    if n % 2 != 0 {
        return Err(format!("torus dimension {n} is odd"));
    }
    let names = torus_names(env, n);
    let torus = match omega {
        Some(w) => SymplecticTorus::new(env.matrix(w).clone(), names).map_err(err)?,
        None => SymplecticTorus::new(SymplecticTorus::standard(n / 2).omega().clone(), names).map_err(err)?,
    };
    let w = basis.as_ref().map_or_else(|| QMatrix::identity(n), |b| env.matrix(b).clone());
    let p: Vec<Rational> = match offset {
        Some(o) => o.iter().map(|v| number(v, "").map_err(err)).collect::<Outcome<_>>()?,
        None => vec![Rational::from_integer(0.into()); n],
    };
    let f = env.matrix(curvature);
    let brane = match curvature_on {
        CurvatureFrame::Ambient => CoisotropicBrane::from_ambient(w, p, f),
        CurvatureFrame::Brane => CoisotropicBrane::new(w, p, f.clone()),
    }
    .map_err(err)?;

    let report = is_coisotropic_brane(&torus, &brane);
    out.summary("brane", &report);
    if !report.passed() {
        return Ok(());
    }
    let (lifted, equations) = lift(&torus, &brane).map_err(err)?;
    for (i, e) in equations.iter().enumerate() {
        out.details.insert(format!("lift.equation[{i}]"), e.render(&torus));
    }
    out.details.insert("lift.basis".into(), lifted.basis().to_string());
    out.details.insert("lift.dim".into(), lifted.dim().to_string());
    let double = DoubledTorus::new(&torus);
    out.details.insert("double.j_squared_minus_one".into(), double.j_squares_to_minus_one().to_string());
    out.details.insert("double.omega_j_invariant".into(), double.omega_is_j_invariant().to_string());
    out.check("lift.integral", &Check::verdict(lifted.is_integral()));
    out.check("lift.lagrangian", &Check::verdict(is_lagrangian_in_double(&lifted, &double)));
    out.check("lift.complex", &Check::verdict(is_complex_in_double(&lifted, &double)));
    Ok(())
}

fn linear_lagrangian(target: &Pairing, span: &QMatrix) -> Outcome<LinearLagrangian> {
    let source = LinearComplex::concentrated(0, span.cols());
    let map = GradedMap::new(&source, target.complex(), 0, BTreeMap::from([(0, span.clone())])).map_err(err)?;
    LinearLagrangian::with_zero_structure(target, &map).map_err(err)
}

fn intersect(env: &Env, target: &str, out: &mut Output) -> Outcome<()> {
    let StructureDecl::LinearPair { symplectic, first, second } = env.decl(target) else { unreachable!() };
    let pairing = Pairing::symplectic(env.matrix(symplectic)).map_err(err)?;
    out.check("symplectic.nondegeneracy", &pairing.nondegeneracy());
    let l1 = linear_lagrangian(&pairing, env.matrix(first))?;
    let l2 = linear_lagrangian(&pairing, env.matrix(second))?;
    out.summary("first", &l1.certify());
    out.summary("second", &l2.certify());
    out.summary("intersection", &lagrangian_intersection(&l1, &l2).map_err(err)?);
    Ok(())
}

fn render_point(p: &HashMap<String, Rational>) -> BTreeMap<String, String> {
    p.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect()
}

pub fn execute(scene: &Resolved, task: &ResolvedTask, seed: u64, samples: usize) -> TaskReport {
    let env = Env { scene, seed, samples };
    let mut out = Output::default();
    let target = task.target.as_str();
    let result = match task.kind {
        TaskKind::CheckGc => check_gc(&env, target, &mut out),
        TaskKind::CheckAlgebroid => check_algebroid(&env, target, &mut out),
        TaskKind::CheckShifted => check_shifted(&env, target, &mut out),
        TaskKind::CheckLagrangian => check_lagrangian(&env, target, &mut out),
        TaskKind::CheckHhs => check_hhs(&env, task, &mut out),
        TaskKind::CheckFoliation => check_foliation(&env, target, &mut out),
        TaskKind::LiftBrane => lift_brane(&env, target, &mut out),
        TaskKind::Intersect => intersect(&env, target, &mut out),
    };
    let error = result.err();
    TaskReport {
        name: task.name.clone(),
        task: task.kind.name().into(),
        target: task.target.clone(),
        passed: error.is_none() && out.checks.iter().all(|c| c.passed),
        seed,
        samples,
        error,
        checks: out.checks,
        details: out.details,
        sample_points: out.points.iter().map(render_point).collect(),
        conventions: task.conventions.table(),
    }
}
