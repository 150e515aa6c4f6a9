//! Verification reports: one record per checked identity instance.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "weylns/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// What went wrong in a failed record.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub witness: String,
    pub expected: Vec<i64>,
    pub actual: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
}

impl Record {
    pub fn new(id: &str, params: &[(&str, i64)], counterexample: Option<Counterexample>) -> Self {
        Self {
            id: id.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            status: if counterexample.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            counterexample,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn params_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}

impl Report {
    pub fn new() -> Self {
        Self {
            schema: SCHEMA.to_string(),
            records: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn from_records(records: impl IntoIterator<Item = Record>) -> Self {
        let mut r = Self::new();
        r.extend(records);
        r
    }

    pub fn push(&mut self, record: Record) {
        self.summary.total += 1;
        if record.passed() {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.records.push(record);
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = Record>) {
        for r in records {
            self.push(r);
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.extend(other.records);
    }

    /// Sorts records into canonical order so concurrent assembly cannot
    /// change the emitted bytes.
    pub fn normalize(&mut self) {
        self.records.sort();
    }

    pub fn is_success(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.passed())
    }

    /// 0 when everything passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.is_success() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let id_w = self.records.iter().map(|r| r.id.len()).max().unwrap_or(2).max(8);
        let _ = writeln!(out, "{:<id_w$}  {:<6}  params", "identity", "status");
        for r in &self.records {
            let status = if r.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{:<id_w$}  {:<6}  {}", r.id, status, r.params_text());
            if let Some(c) = &r.counterexample {
                let _ = writeln!(
                    out,
                    "{:<id_w$}          at {}: expected {:?}, got {:?}",
                    "", c.witness, c.expected, c.actual
                );
            }
        }
        let _ = writeln!(
            out,
            "total {}  passed {}  failed {}",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_tracks_status() {
        let mut r = Report::new();
        r.push(Record::new("a", &[("n", 3)], None));
        r.push(Record::new(
            "b",
            &[("n", 4)],
            Some(Counterexample {
                witness: "v0".into(),
                expected: vec![1],
                actual: vec![2],
            }),
        ));
        assert_eq!(r.summary, Summary { total: 2, passed: 1, failed: 1 });
        assert_eq!(r.exit_code(), 1);
        assert!(r.render_table().contains("FAIL"));
    }

    #[test]
    fn json_has_schema_tag() {
        let r = Report::from_records([Record::new("x", &[], None)]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], "weylns/1");
        assert_eq!(v["records"][0]["status"], "pass");
        assert!(v["records"][0]["counterexample"].is_null());
    }
}
