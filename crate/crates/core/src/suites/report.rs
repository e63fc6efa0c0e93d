use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

use crate::spaces::SpaceKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    /// `|value − threshold| ≤ slack`
    #[serde(rename = "==")]
    Equal,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub relation: Relation,
    #[serde(skip_serializing_if = "is_zero")]
    pub slack: f64,
    /// Informational checks are reported but do not decide the case.
    pub required: bool,
    pub pass: bool,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::build(name, value, threshold, Relation::AtMost, 0.0, value <= threshold)
    }

    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::build(name, value, threshold, Relation::AtLeast, 0.0, value >= threshold)
    }

    pub fn equal(name: impl Into<String>, value: f64, target: f64, slack: f64) -> Self {
        Self::build(name, value, target, Relation::Equal, slack, (value - target).abs() <= slack)
    }

    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Self::build(name, if holds { 1.0 } else { 0.0 }, 1.0, Relation::Equal, 0.0, holds)
    }

    pub fn required(mut self, required: bool) -> Self {
        self.required = required;
        self
    }

    fn build(name: impl Into<String>, value: f64, threshold: f64, relation: Relation, slack: f64, pass: bool) -> Self {
        Self { name: name.into(), value, threshold, relation, slack, required: true, pass }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inputs_digest: Option<String>,
    pub space: Option<String>,
    pub n: Option<usize>,
    pub caps: Vec<usize>,
    /// one-based
    pub alpha: Vec<usize>,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Headline numbers for tabular output.
    pub residual: Option<f64>,
    pub angle: Option<f64>,
    pub min_eig: Option<f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub artifacts: BTreeMap<String, serde_json::Value>,
}

impl CaseResult {
    pub fn new(label: impl Into<String>, inputs_digest: Option<String>) -> Self {
        Self {
            label: label.into(),
            inputs_digest,
            space: None,
            n: None,
            caps: Vec::new(),
            alpha: Vec::new(),
            pass: true,
            checks: Vec::new(),
            residual: None,
            angle: None,
            min_eig: None,
            artifacts: BTreeMap::new(),
        }
    }

    pub fn describe(&mut self, kind: &SpaceKind, caps: &[usize], alpha: &[usize]) {
        self.space = Some(kind.name().to_string());
        self.n = Some(caps.len());
        self.caps = caps.to_vec();
        self.alpha = alpha.to_vec();
    }

    /// Records a check and returns whether it passed.
    pub fn push(&mut self, check: Check) -> bool {
        let ok = check.pass;
        if check.required && !ok {
            self.pass = false;
        }
        self.checks.push(check);
        ok
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_check_names(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    /// The property the suite exercises, in words.
    pub anchor: String,
    pub pass: bool,
    pub cases: Vec<CaseResult>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn new(suite: &str, anchor: &str, cases: Vec<CaseResult>, wall_time: Duration) -> Self {
        let pass = cases.iter().all(|c| c.pass);
        Self { suite: suite.into(), anchor: anchor.into(), pass, cases, wall_time }
    }

    pub fn case(&self, label: &str) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.label == label)
    }

    /// Largest headline residual over the cases (0 when none report one).
    pub fn max_residual(&self) -> f64 {
        self.cases.iter().filter_map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn max_angle(&self) -> f64 {
        self.cases.iter().filter_map(|c| c.angle).fold(0.0, f64::max)
    }
}
