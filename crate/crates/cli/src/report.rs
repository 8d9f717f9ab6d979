use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::cache::sha256_hex;
use crate::config::ConfigEcho;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuiteStatus {
    Pass,
    Fail,
    /// Not run, with the reason, e.g. `threshold`.
    Skipped(String),
}

impl SuiteStatus {
    pub fn is_failure(&self) -> bool {
        *self == SuiteStatus::Fail
    }
}

impl fmt::Display for SuiteStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteStatus::Pass => f.write_str("PASS"),
            SuiteStatus::Fail => f.write_str("FAIL"),
            SuiteStatus::Skipped(why) => write!(f, "SKIPPED({why})"),
        }
    }
}

impl Serialize for SuiteStatus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SuiteStatus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<SuiteStatus, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "PASS" => Ok(SuiteStatus::Pass),
            "FAIL" => Ok(SuiteStatus::Fail),
            _ => s
                .strip_prefix("SKIPPED(")
                .and_then(|r| r.strip_suffix(')'))
                .map(|why| SuiteStatus::Skipped(why.to_string()))
                .ok_or_else(|| serde::de::Error::custom(format!("unknown suite status `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub title: String,
    pub status: SuiteStatus,
    pub checks: Vec<CheckLine>,
    pub certificates: Value,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckLine> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub presentation_hashes: BTreeMap<String, String>,
    pub suites: Vec<SuiteReport>,
    /// Steps the run relies on without certifying them.
    pub assumptions: Vec<String>,
    pub passed: bool,
    /// Wall-clock seconds; left out of the canonical form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without timings; identical for identical configuration and version.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timings = None;
        r.to_json()
    }

    pub fn digest(&self) -> String {
        sha256_hex(self.canonical_json())
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// One line per suite, then the overall verdict.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let passed = s.checks.iter().filter(|c| c.passed).count();
            out.push_str(&format!(
                "{:<20} {:<20} {passed}/{} checks  {}\n",
                s.suite,
                s.status.to_string(),
                s.checks.len(),
                s.title
            ));
            for c in s.checks.iter().filter(|c| !c.passed) {
                out.push_str(&format!("    FAIL {}: {}\n", c.name, c.detail));
            }
        }
        out.push_str(&format!(
            "overall: {}  digest {}\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.digest()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_round_trips() {
        for s in [
            SuiteStatus::Pass,
            SuiteStatus::Fail,
            SuiteStatus::Skipped("threshold".into()),
        ] {
            let js = serde_json::to_string(&s).unwrap();
            assert_eq!(serde_json::from_str::<SuiteStatus>(&js).unwrap(), s);
        }
        assert_eq!(
            serde_json::to_string(&SuiteStatus::Skipped("threshold".into())).unwrap(),
            "\"SKIPPED(threshold)\""
        );
    }
}
