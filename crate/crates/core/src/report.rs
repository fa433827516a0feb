//! The JSON envelope every CLI command prints.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub command: Vec<String>,
    /// SHA-256 of the input file, hex encoded, for commands that read one.
    pub input_digest: Option<String>,
    pub elapsed_ms: f64,
    pub version: &'static str,
    pub result: T,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}
