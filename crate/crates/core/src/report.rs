//! Run reports: `key: value` lines by default, one JSON object on request.
//! Everything but `wall_ms` is a function of the input and flags.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Answer {
    Yes,
    No,
    ProbablyInfeasible,
}

impl Answer {
    pub fn name(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::ProbablyInfeasible => "probably-infeasible",
        }
    }

    /// 0 for yes, 1 otherwise.
    pub fn exit_code(self) -> i32 {
        match self {
            Answer::Yes => 0,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub input_sha256: String,
    pub command: String,
    pub algorithm: String,
    pub params: BTreeMap<String, String>,
    pub answer: Answer,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<usize>,
    /// 1-based ids, space separated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peak_table: Option<usize>,
    pub wall_ms: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunReport {
    pub fn new(input: &[u8], command: &str, algorithm: &str) -> Self {
        RunReport {
            input_sha256: digest(input),
            command: command.to_string(),
            algorithm: algorithm.to_string(),
            params: BTreeMap::new(),
            answer: Answer::No,
            optimum: None,
            witness: None,
            peak_table: None,
            wall_ms: 0,
            trace: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| writeln!(out, "{k}: {v}").unwrap();
        kv("input_sha256", &self.input_sha256);
        kv("command", &self.command);
        kv("algorithm", &self.algorithm);
        for (k, v) in &self.params {
            kv(&format!("param.{k}"), v);
        }
        kv("answer", &self.answer.name());
        if let Some(o) = self.optimum {
            kv("optimum", &o);
        }
        if let Some(w) = &self.witness {
            kv("witness", w);
        }
        if let Some(p) = self.peak_table {
            kv("peak_table", &p);
        }
        kv("wall_ms", &self.wall_ms);
        for t in &self.trace {
            kv("trace", t);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes") + "\n"
    }

    /// Rendering with the timing field zeroed, for comparisons.
    pub fn without_timing(&self) -> String {
        let mut r = self.clone();
        r.wall_ms = 0;
        r.to_lines()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            digest(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn line_and_json_forms() {
        let mut r = RunReport::new(b"x", "solve-dsq", "dp");
        r.param("join", "naive");
        r.answer = Answer::Yes;
        r.optimum = Some(1);
        r.witness = Some("2".into());
        r.wall_ms = 5;
        let lines = r.to_lines();
        assert!(lines.contains("param.join: naive\n"));
        assert!(lines.contains("answer: yes\noptimum: 1\nwitness: 2\n"));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["answer"], "yes");
        assert_eq!(v["optimum"], 1);
        assert!(v.get("peak_table").is_none());
        assert!(r.without_timing().contains("wall_ms: 0\n"));
    }
}
