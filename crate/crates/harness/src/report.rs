use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::corpus::CorpusParams;
use crate::error::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub graph_id: String,
    pub provenance: String,
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub millis: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Counts {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Skip => self.skip += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub corpus: CorpusParams,
    pub seed: u64,
    pub graphs: usize,
    pub versions: BTreeMap<String, String>,
    pub counts: BTreeMap<String, Counts>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub meta: Meta,
    pub results: Vec<CheckResult>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    graph_id: &'a str,
    provenance: &'a str,
    check: &'a str,
    status: Status,
    witness: String,
    millis: f64,
}

impl VerificationReport {
    /// Sorts the results by graph id, then check, and recomputes counts.
    pub fn new(corpus: CorpusParams, graphs: usize, mut results: Vec<CheckResult>) -> Self {
        results.sort_by(|a, b| (&a.graph_id, &a.check).cmp(&(&b.graph_id, &b.check)));
        let mut counts: BTreeMap<String, Counts> = BTreeMap::new();
        for r in &results {
            counts.entry(r.check.clone()).or_default().add(r.status);
        }
        let versions = BTreeMap::from([
            ("pcube".to_string(), pcube::VERSION.to_string()),
            ("pcube-harness".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ]);
        VerificationReport {
            meta: Meta {
                seed: corpus.seed,
                corpus,
                graphs,
                versions,
                counts,
            },
            results,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn is_clean(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn for_check<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a CheckResult> {
        self.results.iter().filter(move |r| r.check == check)
    }

    pub fn to_json(&self) -> Result<String, HarnessError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        Ok(serde_json::from_str(text)?)
    }

    /// One row per result; the witness column holds compact JSON.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), HarnessError> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.results {
            w.serialize(CsvRow {
                graph_id: &r.graph_id,
                provenance: &r.provenance,
                check: &r.check,
                status: r.status,
                witness: r.witness.as_ref().map(Value::to_string).unwrap_or_default(),
                millis: r.millis,
            })?;
        }
        w.flush()?;
        Ok(())
    }

    /// Per-check counts as an aligned text table.
    pub fn summary_table(&self) -> String {
        let width = self.meta.counts.keys().map(String::len).max().unwrap_or(5).max(5);
        let mut s = format!("{:width$}  {:>6} {:>6} {:>6}\n", "check", "pass", "fail", "skip");
        for (check, c) in &self.meta.counts {
            s += &format!("{check:width$}  {:>6} {:>6} {:>6}\n", c.pass, c.fail, c.skip);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        let results = vec![
            CheckResult {
                graph_id: "b".into(),
                provenance: "family-Q3".into(),
                check: "recognizers".into(),
                status: Status::Pass,
                witness: None,
                millis: 0.1 + 0.2,
            },
            CheckResult {
                graph_id: "a".into(),
                provenance: "exhaustive-5".into(),
                check: "tree_ph0".into(),
                status: Status::Fail,
                witness: Some(serde_json::json!({"ph": 2, "tree": false})),
                millis: 1.0 / 3.0,
            },
        ];
        VerificationReport::new(CorpusParams::default(), 2, results)
    }

    #[test]
    fn sorted_and_counted() {
        let r = sample();
        assert_eq!(r.results[0].graph_id, "a");
        assert_eq!(r.meta.counts["tree_ph0"].fail, 1);
        assert!(!r.is_clean());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let r = sample();
        assert_eq!(VerificationReport::from_json(&r.to_json().unwrap()).unwrap(), r);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "graph_id,provenance,check,status,witness,millis");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("a,exhaustive-5,tree_ph0,fail,"));
    }
}
