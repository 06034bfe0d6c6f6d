//! Canonical JSON report emission.
//!
//! Reports are deterministic by construction: map keys are sorted
//! (`BTreeMap` plus `serde_json`'s ordered maps), integers are decimal
//! strings, polynomials are canonical text, and nothing time- or
//! host-dependent is recorded, so identical invocations serialize to
//! identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// The envelope every subcommand can emit with `--json`.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    /// The invoked command line, binary name reduced to its basename.
    pub command: Vec<String>,
    /// SHA-256 digests of every input model, keyed by how it was named.
    pub inputs: BTreeMap<String, String>,
    /// Command-specific result tree; exact integers appear as decimal
    /// strings and polynomials in canonical text form.
    pub results: serde_json::Value,
    /// Provenance notes for values the computation assumes rather than
    /// derives.
    pub citations: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            command,
            inputs: BTreeMap::new(),
            results: serde_json::Value::Null,
            citations: Vec::new(),
        }
    }

    /// Canonical serialization: pretty JSON plus a trailing newline.
    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Lowercase hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_matches_known_vector() {
        // SHA-256 of the empty string.
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn render_is_stable() {
        let mut report = ReportDocument::new(vec!["cy3".into(), "demo".into()]);
        report.inputs.insert("builtin:demo".into(), sha256_hex(b"x"));
        report.results = serde_json::json!({"b": "2", "a": "1"});
        let first = report.render();
        assert_eq!(first, report.render());
        assert!(first.ends_with('\n'));
        // serde_json orders object keys, so "a" serializes before "b".
        let a = first.find("\"a\"").unwrap();
        let b = first.find("\"b\"").unwrap();
        assert!(a < b);
    }
}
