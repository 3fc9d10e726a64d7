use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use isocal::{all_passed, Check};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub input_hash: Option<String>,
    pub tolerances: BTreeMap<String, f64>,
    pub results: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub passed: bool,
    /// Omitted with `--stable`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl Report {
    pub fn new(command: Vec<String>, tolerances: BTreeMap<String, f64>) -> Self {
        Self {
            schema: SCHEMA,
            tool: "isocal",
            version: env!("CARGO_PKG_VERSION"),
            command,
            input_hash: None,
            tolerances,
            results: BTreeMap::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            passed: true,
            wall_time_s: None,
        }
    }

    pub fn result(&mut self, name: &str, value: impl Into<Value>) {
        self.results.insert(name.to_string(), value.into());
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn finish(&mut self) {
        self.passed = all_passed(&self.checks);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    /// Writes to `path`, or to stdout when `None`.
    pub fn emit(&self, path: Option<&Path>) -> Result<(), CliError> {
        let text = self.to_json();
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
        }
    }
}

/// `sha256:<hex>` of the bytes.
pub fn content_hash(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_of_empty_input() {
        assert_eq!(
            content_hash(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn schema_and_verdict() {
        let mut r = Report::new(vec!["verify".into()], BTreeMap::new());
        r.check(Check::at_most("a", 1.0, 2.0));
        r.check(Check::at_most("b", 3.0, 2.0));
        r.finish();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["passed"], false);
        assert!(v.get("wall_time_s").is_none());
    }
}
