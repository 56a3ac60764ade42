//! Machine-readable report envelope.
//!
//! Every command can emit one JSON document with the same top-level shape;
//! maps are sorted and rationals are exact `p/q` strings, so identical
//! invocations produce byte-identical output.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub input_sha: String,
    pub result: serde_json::Value,
    pub witness: Option<serde_json::Value>,
    pub certificate: Option<serde_json::Value>,
    pub diagnostics: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: String, input_sha: String) -> Self {
        ReportDocument {
            command,
            input_sha,
            result: serde_json::Value::Null,
            witness: None,
            certificate: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn print(&self) {
        println!(
            "{}",
            serde_json::to_string_pretty(self).expect("report serializes")
        );
    }
}

pub fn sha_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
