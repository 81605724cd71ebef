//! Versioned report documents shared by the reproduction targets and the
//! command-line driver.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "periodica.report/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Overall outcome. `Computed` marks documents that carry data but no checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    Computed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// A number quoted from the literature rather than computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cited {
    pub what: String,
    pub value: Value,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub target: String,
    pub claim: String,
    pub parameters: BTreeMap<String, Value>,
    pub inputs: Vec<InputHash>,
    pub bounds: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub data: Value,
    pub cited: Vec<Cited>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(target: impl Into<String>, claim: impl Into<String>) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            target: target.into(),
            claim: claim.into(),
            parameters: BTreeMap::new(),
            inputs: Vec::new(),
            bounds: BTreeMap::new(),
            checks: Vec::new(),
            data: Value::Object(Default::default()),
            cited: Vec::new(),
            verdict: Verdict::Computed,
        }
    }

    pub fn param(mut self, key: &str, v: impl Serialize) -> Self {
        self.parameters.insert(key.to_string(), to_value(v));
        self
    }

    pub fn bound(mut self, key: &str, v: impl Serialize) -> Self {
        self.bounds.insert(key.to_string(), to_value(v));
        self
    }

    pub fn check(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status, detail: detail.into() });
        self.verdict = self.summarize();
    }

    pub fn check_bool(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.check(name, Status::from_bool(pass), detail);
    }

    pub fn cite(&mut self, what: impl Into<String>, value: impl Serialize, note: impl Into<String>) {
        self.cited.push(Cited { what: what.into(), value: to_value(value), note: note.into() });
    }

    /// Inserts `v` under `key` in the data object.
    pub fn datum(&mut self, key: &str, v: impl Serialize) {
        if let Value::Object(map) = &mut self.data {
            map.insert(key.to_string(), to_value(v));
        }
    }

    fn summarize(&self) -> Verdict {
        if self.checks.is_empty() {
            Verdict::Computed
        } else if self.checks.iter().any(|c| c.status == Status::Fail) {
            Verdict::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    /// Pretty JSON with a trailing newline. Object keys come out sorted, so
    /// equal reports serialize to identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&sorted(serde_json::to_value(self).expect("report serializes"))).expect("json");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}\n", self.target);
        let _ = writeln!(s, "{}\n", self.claim);
        let _ = writeln!(s, "**Verdict:** {}\n", verdict_word(self.verdict));
        if !self.parameters.is_empty() {
            let _ = writeln!(s, "## Parameters\n\n| name | value |\n|---|---|");
            for (k, v) in &self.parameters {
                let _ = writeln!(s, "| {k} | {} |", inline(v));
            }
            s.push('\n');
        }
        if !self.bounds.is_empty() {
            let _ = writeln!(s, "## Bounds\n\n| name | value |\n|---|---|");
            for (k, v) in &self.bounds {
                let _ = writeln!(s, "| {k} | {} |", inline(v));
            }
            s.push('\n');
        }
        if !self.inputs.is_empty() {
            let _ = writeln!(s, "## Inputs\n\n| path | sha256 |\n|---|---|");
            for i in &self.inputs {
                let _ = writeln!(s, "| {} | `{}` |", i.path, i.sha256);
            }
            s.push('\n');
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s, "## Checks\n\n| check | status | detail |\n|---|---|---|");
            for c in &self.checks {
                let _ = writeln!(s, "| {} | {} | {} |", c.name, status_word(c.status), c.detail.replace('|', "\\|"));
            }
            s.push('\n');
        }
        if !self.cited.is_empty() {
            let _ = writeln!(s, "## Cited, not computed\n\n| what | value | note |\n|---|---|---|");
            for c in &self.cited {
                let _ = writeln!(s, "| {} | {} | {} |", c.what, inline(&c.value), c.note);
            }
            s.push('\n');
        }
        let _ = writeln!(s, "## Data\n\n```json\n{}\n```", serde_json::to_string_pretty(&sorted(self.data.clone())).expect("json"));
        s
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

fn sorted(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let b: BTreeMap<String, Value> = map.into_iter().map(|(k, v)| (k, sorted(v))).collect();
            Value::Object(b.into_iter().collect())
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(sorted).collect()),
        other => other,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Inconclusive => "INCONCLUSIVE",
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Inconclusive => "INCONCLUSIVE",
        Verdict::Computed => "COMPUTED",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_checks() {
        let mut r = Report::new("t", "c");
        assert_eq!(r.verdict, Verdict::Computed);
        r.check_bool("a", true, "");
        assert_eq!(r.verdict, Verdict::Pass);
        r.check("b", Status::Inconclusive, "");
        assert_eq!(r.verdict, Verdict::Inconclusive);
        r.check_bool("c", false, "");
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn json_round_trips_and_is_stable() {
        let mut r = Report::new("t", "c").param("z", 1).param("a", "x").bound("truncation", 8);
        r.datum("zeta", vec![1, 2]);
        r.datum("alpha", serde_json::json!({"y": 1, "b": 2}));
        r.cite("count", 3, "quoted");
        let s = r.to_json();
        assert_eq!(s, r.clone().to_json());
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert!(s.find("\"b\"").unwrap() < s.find("\"y\"").unwrap());
    }

    #[test]
    fn markdown_has_sections() {
        let mut r = Report::new("t", "claim text");
        r.check_bool("x", true, "a|b");
        let md = r.to_markdown();
        assert!(md.contains("## Checks"));
        assert!(md.contains("a\\|b"));
        assert!(md.contains("**Verdict:** PASS"));
    }
}
