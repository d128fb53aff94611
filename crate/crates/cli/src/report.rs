//! Run reports: an ordered list of named verdicts with witnesses, computed
//! dimensions, and an input digest. Serialization is byte-deterministic for a
//! fixed input and seed: keys are sorted, verdicts keep execution order, and
//! no timing or environment data enters the serialized form.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub pipeline: String,
    pub source: String,
    pub input_digest: String,
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
    pub dims: BTreeMap<String, u64>,
    pub info: BTreeMap<String, Value>,
}

pub fn digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    let hex: String = out.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

impl RunReport {
    pub fn new(pipeline: &str, source: &str, input_bytes: &[u8], seed: u64) -> RunReport {
        RunReport {
            pipeline: pipeline.to_string(),
            source: source.to_string(),
            input_digest: digest(input_bytes),
            seed,
            verdicts: Vec::new(),
            dims: BTreeMap::new(),
            info: BTreeMap::new(),
        }
    }

    pub fn pass(&mut self, name: &str) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            pass: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: &str, witness: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            pass: false,
            witness: Some(witness.into()),
        });
    }

    pub fn dim(&mut self, name: &str, value: usize) {
        self.dims.insert(name.to_string(), value as u64);
    }

    pub fn note(&mut self, name: &str, value: Value) {
        self.info.insert(name.to_string(), value);
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| {
                json!({
                    "name": v.name,
                    "pass": v.pass,
                    "witness": v.witness,
                })
            })
            .collect();
        json!({
            "schema": 1,
            "pipeline": self.pipeline,
            "source": self.source,
            "input_digest": self.input_digest,
            "seed": self.seed,
            "verdicts": verdicts,
            "dims": self.dims,
            "info": self.info,
        })
    }

    /// Canonical JSON bytes: pretty-printed with sorted keys and a trailing
    /// newline.
    pub fn to_json_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        out.push('\n');
        out.into_bytes()
    }

    /// Plain-text rendering: verdicts in execution order, then dimensions.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("pipeline: {}\n", self.pipeline));
        out.push_str(&format!("source: {}\n", self.source));
        out.push_str(&format!("input: {}\n", self.input_digest));
        out.push_str(&format!("seed: {}\n", self.seed));
        for v in &self.verdicts {
            let status = if v.pass { "pass" } else { "FAIL" };
            match &v.witness {
                Some(w) => out.push_str(&format!("[{status}] {} ({w})\n", v.name)),
                None => out.push_str(&format!("[{status}] {}\n", v.name)),
            }
        }
        for (k, v) in &self.dims {
            out.push_str(&format!("dim {k} = {v}\n"));
        }
        for (k, v) in &self.info {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }
}
