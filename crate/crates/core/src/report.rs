//! Pass/fail verdicts with canonical residual listings.

use std::collections::BTreeMap;
use std::fmt::Display;

/// A nonzero residual at a named location (bidegree, index pair, sample point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub location: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Check {
    pub passed: bool,
    pub residuals: Vec<Residual>,
    pub notes: BTreeMap<String, String>,
}

impl Check {
    pub fn pass() -> Self {
        Check { passed: true, ..Default::default() }
    }

    pub fn fail(location: impl Into<String>, value: impl Display) -> Self {
        Check {
            passed: false,
            residuals: vec![Residual { location: location.into(), value: value.to_string() }],
            notes: BTreeMap::new(),
        }
    }

    pub fn verdict(passed: bool) -> Self {
        Check { passed, ..Default::default() }
    }

    /// Passes iff no residuals were collected.
    pub fn from_residuals(residuals: Vec<Residual>) -> Self {
        Check { passed: residuals.is_empty(), residuals, notes: BTreeMap::new() }
    }

    pub fn with_note(mut self, key: impl Into<String>, value: impl Display) -> Self {
        self.notes.insert(key.into(), value.to_string());
        self
    }
}

/// Collects residuals, skipping zero values.
#[derive(Debug, Default)]
pub struct Residuals(Vec<Residual>);

impl Residuals {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_if(&mut self, nonzero: bool, location: impl Into<String>, value: impl Display) {
        if nonzero {
            self.0.push(Residual { location: location.into(), value: value.to_string() });
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_check(self) -> Check {
        Check::from_residuals(self.0)
    }
}

/// Anything that renders as a list of named checks plus free-form details.
pub trait Summary {
    fn checks(&self) -> Vec<(String, Check)>;

    fn details(&self) -> BTreeMap<String, String> {
        BTreeMap::new()
    }

    fn passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.passed)
    }
}
