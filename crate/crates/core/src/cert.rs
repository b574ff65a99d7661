//! Certificates: the pass/fail record every suite produces, with stable
//! JSON and a readable text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION_STAMP: &str = concat!("dwork ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    Verified,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub name: String,
    /// Descriptive name of the statement being checked.
    pub anchor: String,
    pub status: CaseStatus,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub witness: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomials: Option<usize>,
    /// Wall time, present only when timings were requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl CaseRecord {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, ok: bool, witness: Value) -> Self {
        CaseRecord {
            name: name.into(),
            anchor: anchor.into(),
            status: if ok { CaseStatus::Verified } else { CaseStatus::Failed },
            witness,
            monomials: None,
            millis: None,
        }
    }

    pub fn with_monomials(mut self, n: usize) -> Self {
        self.monomials = Some(n);
        self
    }

    pub fn verified(&self) -> bool {
        self.status == CaseStatus::Verified
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub suite: String,
    pub version: String,
    pub pass: bool,
    pub cases: Vec<CaseRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, thiserror::Error)]
pub enum CertError {
    #[error("malformed certificate: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("certificate pass flag disagrees with its cases")]
    Inconsistent,
}

impl Certificate {
    pub fn new(suite: impl Into<String>, cases: Vec<CaseRecord>) -> Self {
        let pass = cases.iter().all(CaseRecord::verified);
        Certificate { suite: suite.into(), version: VERSION_STAMP.to_string(), pass, cases }
    }

    /// Concatenates certificates under one suite name.
    pub fn merge(suite: impl Into<String>, parts: Vec<Certificate>) -> Self {
        let cases = parts.into_iter().flat_map(|c| c.cases).collect();
        Certificate::new(suite, cases)
    }

    pub fn failures(&self) -> Vec<&CaseRecord> {
        self.cases.iter().filter(|c| !c.verified()).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificates serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self, CertError> {
        let c: Certificate = serde_json::from_str(s)?;
        if c.pass != c.cases.iter().all(CaseRecord::verified) {
            return Err(CertError::Inconsistent);
        }
        Ok(c)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let ok = self.cases.iter().filter(|c| c.verified()).count();
        let _ = writeln!(out, "{} [{}]: {verdict} ({ok}/{} verified)", self.suite, self.version, self.cases.len());
        for c in &self.cases {
            let mark = if c.verified() { "ok  " } else { "FAIL" };
            let _ = write!(out, "  {mark} {} <{}>", c.name, c.anchor);
            if let Some(n) = c.monomials {
                let _ = write!(out, " monomials={n}");
            }
            if let Some(ms) = c.millis {
                let _ = write!(out, " {ms}ms");
            }
            out.push('\n');
            if let Some(summary) = text_witness(&c.witness) {
                let _ = writeln!(out, "       {summary}");
            }
        }
        out
    }
}

/// One-line digest of scalar witness fields.
fn text_witness(v: &Value) -> Option<String> {
    let obj = v.as_object()?;
    let parts: Vec<String> = obj
        .iter()
        .filter_map(|(k, v)| match v {
            Value::Bool(_) | Value::Number(_) => Some(format!("{k}={v}")),
            Value::String(s) if s.len() <= 60 => Some(format!("{k}={s}")),
            _ => None,
        })
        .collect();
    (!parts.is_empty()).then(|| parts.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_flags() {
        let c = Certificate::new("demo", vec![CaseRecord::new("a", "x", true, json!({"n": 3})).with_monomials(7)]);
        let back = Certificate::from_json_str(&c.render(Format::Json)).unwrap();
        assert_eq!(back, c);
        assert!(Certificate::new("empty", vec![]).pass);
        let bad = Certificate::new("f", vec![CaseRecord::new("b", "y", false, Value::Null)]);
        assert!(!bad.pass);
        assert!(bad.render(Format::Text).contains("FAIL"));
        let mut forged = bad.clone();
        forged.pass = true;
        assert!(matches!(Certificate::from_json_str(&forged.render(Format::Json)), Err(CertError::Inconsistent)));
    }
}
