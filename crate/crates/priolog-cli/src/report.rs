//! Serializable solve reports.

use serde::{Deserialize, Serialize};

use priolog::{LiteralSet, Program};
use priolog::closure::RuleSet;
use priolog::semantics::SemanticsTrace;

#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub semantics: String,
    /// Final conclusions, rendered and sorted lexicographically. For the
    /// answer set modes this is the intersection of the reported sets.
    pub conclusions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub answer_sets: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub priority_preserving: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<DiffReport>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TraceEntry {
    pub step: usize,
    pub conclusions: Vec<String>,
    pub new_safe_rules: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DiffReport {
    pub wfs: Vec<String>,
    pub wfs_star: Vec<String>,
    pub wfs_pr: Vec<String>,
    pub inclusions_ok: bool,
}

/// Literals of a set, rendered and sorted lexicographically.
pub fn sorted_literals(set: &LiteralSet) -> Vec<String> {
    let mut out: Vec<String> = set.iter().map(|l| l.to_string()).collect();
    out.sort();
    out
}

/// `{a, b, c}` with sorted members.
pub fn set_line(set: &LiteralSet) -> String {
    format!("{{{}}}", sorted_literals(set).join(", "))
}

pub fn trace_entries(program: &Program, trace: &SemanticsTrace) -> Vec<TraceEntry> {
    let mut entries = Vec::with_capacity(trace.steps.len());
    let mut prev = RuleSet::empty();
    for (step, ts) in trace.steps.iter().enumerate() {
        let new_safe_rules = ts
            .safe_rules
            .minus(&prev)
            .iter()
            .map(|idx| program.rule(idx).to_string())
            .collect();
        entries.push(TraceEntry {
            step,
            conclusions: sorted_literals(&ts.conclusions),
            new_safe_rules,
        });
        prev = ts.safe_rules.clone();
    }
    entries
}
