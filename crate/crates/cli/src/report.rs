//! Reports and their text and JSON renderings.
//!
//! The JSON form is a tree of objects, arrays and strings. Exact numbers are
//! decimal strings, so `parse_json(emit_json(d)) == d`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// A command that computes without checking anything.
    #[serde(rename = "INFO")]
    Info,
    #[serde(rename = "OUT-OF-SCOPE")]
    OutOfScope,
    #[serde(rename = "RESOURCE-EXHAUSTED")]
    Exhausted,
    #[serde(rename = "ERROR")]
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Info => "INFO",
            Verdict::OutOfScope => "OUT-OF-SCOPE",
            Verdict::Exhausted => "RESOURCE-EXHAUSTED",
            Verdict::Error => "ERROR",
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// One titled group of values inside a report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub label: String,
    pub fields: BTreeMap<String, String>,
}

impl Step {
    pub fn new(label: impl Into<String>) -> Step {
        Step {
            label: label.into(),
            fields: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Step {
        self.fields.insert(key.into(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub inputs: BTreeMap<String, String>,
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    /// Wall-clock milliseconds, only when timing is requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            verdict: Verdict::Info,
            inputs: BTreeMap::new(),
            steps: Vec::new(),
            message: None,
            elapsed_ms: None,
        }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl ToString) {
        self.inputs.insert(key.into(), value.to_string());
    }

    pub fn step(&mut self, step: Step) {
        self.steps.push(step);
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub reports: Vec<Report>,
}

impl Document {
    /// 3 if any budget ran out, 1 for any other non-passing verdict, else 0.
    pub fn exit_code(&self) -> i32 {
        let vs: Vec<Verdict> = self.reports.iter().map(|r| r.verdict).collect();
        if vs.contains(&Verdict::Exhausted) {
            3
        } else if vs.iter().all(|v| matches!(v, Verdict::Pass | Verdict::Info)) {
            0
        } else {
            1
        }
    }
}

pub fn emit_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("strings only");
    s.push('\n');
    s
}

pub fn parse_json(src: &str) -> serde_json::Result<Document> {
    serde_json::from_str(src)
}

pub fn emit_text(doc: &Document) -> String {
    let mut out = String::new();
    for (i, r) in doc.reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "> {}", r.command);
        for (k, v) in &r.inputs {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for step in &r.steps {
            if step.fields.len() == 1 && step.fields.contains_key("value") {
                let _ = writeln!(out, "  {}: {}", step.label, step.fields["value"]);
                continue;
            }
            let _ = writeln!(out, "  {}:", step.label);
            for (k, v) in &step.fields {
                let _ = writeln!(out, "    {k}: {v}");
            }
        }
        if let Some(m) = &r.message {
            let _ = writeln!(out, "  note: {m}");
        }
        if let Some(ms) = &r.elapsed_ms {
            let _ = writeln!(out, "  elapsed: {ms} ms");
        }
        let _ = writeln!(out, "  => {}", r.verdict.as_str());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Document {
        let mut r = Report::new("show excess D E");
        r.input("D", "u");
        r.step(Step::new("excess").with("value", 1));
        r.step(Step::new("common").with("component", "V(u)").with("ord D", 1).with("ord E", 1));
        Document { reports: vec![r] }
    }

    #[test]
    fn json_round_trip() {
        let d = sample();
        assert_eq!(parse_json(&emit_json(&d)).unwrap(), d);
    }

    #[test]
    fn numbers_are_strings() {
        let v: serde_json::Value = serde_json::from_str(&emit_json(&sample())).unwrap();
        assert_eq!(v["reports"][0]["steps"][0]["fields"]["value"], serde_json::json!("1"));
        assert!(v["reports"][0].get("elapsed_ms").is_none());
    }

    #[test]
    fn text_layout() {
        let t = emit_text(&sample());
        assert_eq!(
            t,
            "> show excess D E\n  D = u\n  excess: 1\n  common:\n    component: V(u)\n    ord D: 1\n    ord E: 1\n  => INFO\n"
        );
    }

    #[test]
    fn exit_codes() {
        let mut d = sample();
        assert_eq!(d.exit_code(), 0);
        d.reports[0].verdict = Verdict::Fail;
        assert_eq!(d.exit_code(), 1);
        d.reports.push(Report { verdict: Verdict::Exhausted, ..Report::new("x") });
        assert_eq!(d.exit_code(), 3);
    }
}
