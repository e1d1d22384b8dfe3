use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// Machine-readable result of one command, printed with `--json`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    /// SHA-256 of the command's inputs (file contents and expression
    /// arguments, joined by NUL bytes), hex encoded.
    pub input_digest: String,
    pub verdict: Value,
    pub witness: Value,
    pub completeness: Option<&'static str>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for (i, part) in inputs.iter().enumerate() {
        if i > 0 {
            h.update([0u8]);
        }
        h.update(part);
    }
    hex::encode(h.finalize())
}
