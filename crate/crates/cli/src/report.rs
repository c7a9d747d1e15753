use serde::{Deserialize, Serialize};

use linkforge::constructions::TheoremWitness;
use linkforge::format::REPORT_FORMAT;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptStep {
    pub stage: String,
    pub value: i64,
}

/// A witness found by a search, with its value recomputed by an independent
/// routine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub kind: String,
    pub cycles: Vec<Vec<usize>>,
    pub value: i64,
    pub recomputed: i64,
    pub transcript: Vec<TranscriptStep>,
}

impl From<&TheoremWitness> for WitnessRecord {
    fn from(w: &TheoremWitness) -> Self {
        WitnessRecord {
            kind: match w.kind {
                linkforge::constructions::WitnessKind::Link => "link".into(),
                linkforge::constructions::WitnessKind::Knot => "knot".into(),
            },
            cycles: w.cycles.iter().map(|c| c.vertices().to_vec()).collect(),
            value: w.value,
            recomputed: w.recomputed,
            transcript: w.transcript.iter().map(|s| TranscriptStep { stage: s.stage.clone(), value: s.value }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recomputed: Option<i64>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass, value: None, recomputed: None, detail: String::new() }
    }

    /// A value and its recomputation; passes iff they agree.
    pub fn agree(name: impl Into<String>, value: i64, recomputed: i64) -> Self {
        Check { value: Some(value), recomputed: Some(recomputed), ..Check::new(name, value == recomputed) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub format: String,
    pub command: Vec<String>,
    pub seeds: Vec<u64>,
    pub timing: Timing,
    pub witnesses: Vec<WitnessRecord>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            format: REPORT_FORMAT.into(),
            command,
            seeds: Vec::new(),
            timing: Timing { elapsed_ms: 0 },
            witnesses: Vec::new(),
            checks: Vec::new(),
            passed: true,
            error: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.pass;
        self.checks.push(check);
    }

    pub fn fail(&mut self, error: impl Into<String>) {
        self.passed = false;
        self.error = Some(error.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        let r: RunReport = serde_json::from_str(text)?;
        anyhow::ensure!(r.format == REPORT_FORMAT, "unsupported report format {:?}", r.format);
        Ok(r)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\n", if self.passed { "PASS" } else { "FAIL" }));
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        for w in &self.witnesses {
            let cycles: Vec<String> =
                w.cycles.iter().map(|c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect();
            out.push_str(&format!("{} {} value {} (recomputed {})\n", w.kind, cycles.join(";"), w.value, w.recomputed));
            for s in &w.transcript {
                out.push_str(&format!("  {}: {}\n", s.stage, s.value));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        for c in &self.checks {
            if self.checks.len() <= 20 || !c.pass {
                out.push_str(&format!("  {} {}", if c.pass { "ok  " } else { "FAIL" }, c.name));
                if let (Some(v), Some(r)) = (c.value, c.recomputed) {
                    out.push_str(&format!(" value {v} recomputed {r}"));
                } else if let Some(v) = c.value {
                    out.push_str(&format!(" value {v}"));
                }
                if !c.detail.is_empty() {
                    out.push_str(&format!(" ({})", c.detail));
                }
                out.push('\n');
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_fails_report() {
        let mut r = RunReport::new(vec!["verify".into()]);
        r.push(Check::agree("a", 1, 1));
        assert!(r.passed);
        r.push(Check::agree("b", 1, 2));
        assert!(!r.passed);
        assert!(r.to_text().starts_with("FAIL"));
    }

    #[test]
    fn json_round_trip() {
        let mut r = RunReport::new(vec!["find".into(), "link".into()]);
        r.seeds = vec![3, 4];
        r.push(Check::new("x", true).with_detail("d"));
        r.witnesses.push(WitnessRecord {
            kind: "link".into(),
            cycles: vec![vec![0, 1, 2], vec![3, 4, 5]],
            value: 1,
            recomputed: 1,
            transcript: vec![TranscriptStep { stage: "pair 0".into(), value: 1 }],
        });
        let text = r.to_json();
        assert_eq!(RunReport::from_json(&text).unwrap(), r);
        assert!(RunReport::from_json(&text.replace(REPORT_FORMAT, "other/1")).is_err());
    }
}
