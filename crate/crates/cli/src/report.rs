use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Outcome class, which doubles as the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Violated,
    Unresolved,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Violated => 1,
            Status::Unresolved => 2,
        }
    }
}

pub const EXIT_INPUT: i32 = 3;

/// How a number was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Lp,
    MonteCarlo { seed: u64, samples: u64 },
    BruteForce,
    Search,
    Exact,
    Quadrature,
}

impl Serialize for Provenance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let text = match self {
            Provenance::ClosedForm => "closed-form".to_string(),
            Provenance::Lp => "lp".to_string(),
            Provenance::MonteCarlo { seed, samples } => format!("monte-carlo({seed},{samples})"),
            Provenance::BruteForce => "brute-force".to_string(),
            Provenance::Search => "search".to_string(),
            Provenance::Exact => "exact".to_string(),
            Provenance::Quadrature => "quadrature".to_string(),
        };
        s.serialize_str(&text)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Tagged {
    pub value: Value,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub status: Status,
    /// Command-specific verdict such as "separable" or "ts".
    pub verdict: String,
    pub values: BTreeMap<String, Tagged>,
    pub certificates: Vec<Value>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, digest: String) -> Self {
        Report {
            command: command.to_string(),
            inputs_digest: digest,
            status: Status::Verified,
            verdict: String::new(),
            values: BTreeMap::new(),
            certificates: Vec::new(),
            warnings: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn value(&mut self, name: &str, value: impl Serialize, provenance: Provenance) -> &mut Self {
        let value = serde_json::to_value(value).unwrap_or(Value::Null);
        self.values.insert(name.to_string(), Tagged { value, provenance });
        self
    }

    pub fn verdict(&mut self, status: Status, verdict: impl Into<String>) -> &mut Self {
        self.status = status;
        self.verdict = verdict.into();
        self
    }

    pub fn warn(&mut self, w: impl Into<String>) -> &mut Self {
        self.warnings.push(w.into());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// SHA-256 over the input bytes followed by the normalized argument string.
pub fn digest(inputs: &[&[u8]], args: &str) -> String {
    let mut h = Sha256::new();
    for part in inputs {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part);
    }
    h.update(args.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn provenance_tags() {
        let mut r = Report::new("x", digest(&[b"a"], "--k 1"));
        r.value("v", 1.5, Provenance::MonteCarlo { seed: 3, samples: 10 });
        let j = r.to_json();
        assert!(j.contains("monte-carlo(3,10)"));
        assert_eq!(r.inputs_digest.len(), 64);
        assert_ne!(digest(&[b"a"], ""), digest(&[b"", b"a"], ""));
    }
}
