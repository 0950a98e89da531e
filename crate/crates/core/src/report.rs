//! Structured verification reports shared by the library tests and the CLI.
//!
//! Reports are deterministic: object keys and array orders never depend on
//! hashing, so identical inputs serialize to identical bytes.

use serde_json::{json, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Verdict of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A computed value disagrees with a tabulated one; the report carries
    /// both and the disagreement itself is the finding.
    ReportedDiscrepancy,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ReportedDiscrepancy => "reported-discrepancy",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub verdict: Verdict,
    pub detail: Option<String>,
}

/// A full command report: echo of the invocation, structured results, and
/// per-check verdicts.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub group: Option<String>,
    pub data: Value,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            group: None,
            data: Value::Null,
            checks: Vec::new(),
        }
    }

    pub fn with_group(mut self, group: impl Into<String>) -> Self {
        self.group = Some(group.into());
        self
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    pub fn push_check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            detail: None,
        });
    }

    pub fn push_outcome(&mut self, name: impl Into<String>, verdict: Verdict, detail: Option<String>) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            verdict,
            detail,
        });
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().all(|c| c.verdict == Verdict::Pass) {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "group": self.group,
            "version": TOOL_VERSION,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "verdict": c.verdict.to_string(),
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "data": self.data,
        })
    }

    /// Canonical byte-stable JSON string.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }

    /// Human-readable rendering: one line per check plus the data block.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.command));
        if let Some(g) = &self.group {
            out.push_str(&format!("group: {g}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}{}\n",
                c.verdict,
                c.name,
                c.detail
                    .as_ref()
                    .map(|d| format!(": {d}"))
                    .unwrap_or_default()
            ));
        }
        if !self.data.is_null() {
            out.push_str(&serde_json::to_string_pretty(&self.data).expect("data serializes"));
            out.push('\n');
        }
        out
    }
}
