//! Report document and its text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use gcstack::report::{Check, Summary};
use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "gcstack-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub versions: BTreeMap<String, String>,
    pub scene: String,
    pub conventions: BTreeMap<String, String>,
    pub passed: bool,
    pub tasks: Vec<TaskReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub name: String,
    pub task: String,
    pub target: String,
    pub passed: bool,
    pub seed: u64,
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub checks: Vec<CheckReport>,
    pub details: BTreeMap<String, String>,
    pub sample_points: Vec<BTreeMap<String, String>>,
    pub conventions: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub residuals: Vec<ResidualReport>,
    pub notes: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub location: String,
    pub value: String,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, c: &Check) -> Self {
        CheckReport {
            name: name.into(),
            passed: c.passed,
            residuals: c
                .residuals
                .iter()
                .map(|r| ResidualReport { location: r.location.clone(), value: r.value.clone() })
                .collect(),
            notes: c.notes.clone(),
        }
    }

    pub fn from_summary(prefix: &str, s: &dyn Summary) -> Vec<Self> {
        s.checks()
            .iter()
            .map(|(n, c)| Self::new(if prefix.is_empty() { n.clone() } else { format!("{prefix}.{n}") }, c))
            .collect()
    }
}

impl ReportDocument {
    pub fn new(scene: String, conventions: BTreeMap<String, String>, tasks: Vec<TaskReport>) -> Self {
        let mut versions = BTreeMap::new();
        versions.insert("gcstack-cli".into(), env!("CARGO_PKG_VERSION").into());
        versions.insert("report_schema".into(), REPORT_SCHEMA.into());
        versions.insert("scene_schema".into(), crate::scene::SCENE_SCHEMA.into());
        ReportDocument {
            schema: REPORT_SCHEMA.into(),
            versions,
            scene,
            conventions,
            passed: tasks.iter().all(|t| t.passed),
            tasks,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn render(report: &ReportDocument, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes");
            out.push(b'\n');
            out
        }
        Format::Text => render_text(report).into_bytes(),
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_text(report: &ReportDocument) -> String {
    let mut s = String::new();
    let title = if report.scene.is_empty() { "scene" } else { &report.scene };
    let _ = writeln!(s, "{title}: {} ({} tasks)", verdict(report.passed), report.tasks.len());
    for t in &report.tasks {
        let _ = writeln!(s, "[{}] {} ({} on {})", verdict(t.passed), t.name, t.task, t.target);
        if let Some(e) = &t.error {
            let _ = writeln!(s, "    error: {e}");
        }
        for c in &t.checks {
            let _ = writeln!(s, "    {:<5} {}", verdict(c.passed), c.name);
            for r in &c.residuals {
                let _ = writeln!(s, "          at {}: {}", r.location, r.value);
            }
        }
        for (k, v) in &t.details {
            let _ = writeln!(s, "    {k} = {v}");
        }
    }
    s
}
