//! Scene-driven driver for the `gcstack` checks.

pub mod report;
pub mod resolve;
pub mod scene;
pub mod tasks;

use std::path::Path;

use rayon::prelude::*;

pub use report::{render, Format, ReportDocument, TaskReport};
pub use scene::{ConventionDecl, Scene, TaskKind};

use resolve::{resolve, ResolvedTask};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SceneError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

/// Flags shared by every subcommand. Flags given here override per-task values.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub conventions: Option<ConventionDecl>,
    /// Restricts the run to one task kind.
    pub only: Option<TaskKind>,
}

fn read(path: &Path) -> Result<String, SceneError> {
    std::fs::read_to_string(path)
        .map_err(|e| SceneError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, path: &Path) -> Result<T, SceneError> {
    serde_json::from_str(text).map_err(|e| SceneError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn load_scene(path: &Path) -> Result<Scene, SceneError> {
    parse_json(&read(path)?, path)
}

pub fn load_conventions(path: &Path) -> Result<ConventionDecl, SceneError> {
    parse_json(&read(path)?, path)
}

pub fn load_report(path: &Path) -> Result<ReportDocument, SceneError> {
    parse_json(&read(path)?, path)
}

/// Runs the tasks of a scene. Tasks execute in parallel; the report keeps scene order.
pub fn run_scene(scene: &Scene, options: &RunOptions) -> Result<ReportDocument, SceneError> {
    let resolved = resolve(scene, options.conventions.as_ref())?;
    let mut selected: Vec<ResolvedTask> = resolved.tasks.clone();
    if let Some(kind) = options.only {
        selected.retain(|t| t.kind == kind);
        if selected.is_empty() {
            // no explicit task of this kind: check every matching structure
            selected = resolved
                .structures
                .iter()
                .filter(|(_, d)| d.kind() == kind.structure_kind())
                .map(|(name, _)| ResolvedTask {
                    name: format!("{}:{name}", kind.name()),
                    kind,
                    target: name.clone(),
                    seed: None,
                    samples: None,
                    conventions: resolved.conventions.clone(),
                })
                .collect();
        }
    }
    let reports: Vec<TaskReport> = selected
        .par_iter()
        .map(|t| {
            let seed = options.seed.or(t.seed).unwrap_or(gcstack::stacky::DEFAULT_SEED);
            let samples = options.samples.or(t.samples).unwrap_or(gcstack::stacky::DEFAULT_SAMPLES);
            tasks::execute(&resolved, t, seed, samples)
        })
        .collect();
    Ok(ReportDocument::new(resolved.name.clone(), resolved.conventions.table(), reports))
}

pub fn run_path(path: &Path, options: &RunOptions) -> Result<ReportDocument, SceneError> {
    run_scene(&load_scene(path)?, options)
}

pub fn exit_code(result: &Result<ReportDocument, SceneError>) -> i32 {
    match result {
        Ok(r) if r.passed => EXIT_PASS,
        Ok(_) => EXIT_FAIL,
        Err(_) => EXIT_MALFORMED,
    }
}
