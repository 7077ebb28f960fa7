//! Serializable experiment reports with a canonical encoding and a determinism digest.
//!
//! The canonical encoding is compact JSON with lexicographically sorted keys and every
//! floating-point number written with 17 significant digits (`{:.16e}`), so a report
//! round-trips losslessly and its SHA-256 digest is reproducible byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Version of the report layout described by `schema/report.schema.json`.
pub const SCHEMA_VERSION: &str = "1.0.0";

/// The published JSON schema for [`Report`].
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub parameters: Map<String, Value>,
    pub metrics: Map<String, Value>,
    pub per_item: Vec<Map<String, Value>>,
    pub verdict: BTreeMap<String, bool>,
    #[serde(default)]
    pub determinism_digest: String,
}

/// A JSON number for a float, `null` if it is not finite.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            parameters: Map::new(),
            metrics: Map::new(),
            per_item: Vec::new(),
            verdict: BTreeMap::new(),
            determinism_digest: String::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn metric(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.metrics.insert(key.to_string(), value.into());
        self
    }

    pub fn push_item(&mut self, item: Map<String, Value>) -> &mut Self {
        self.per_item.push(item);
        self
    }

    pub fn set_verdict(&mut self, key: &str, value: bool) -> &mut Self {
        self.verdict.insert(key.to_string(), value);
        self
    }

    /// True when every verdict is true.
    pub fn passed(&self) -> bool {
        self.verdict.values().all(|&v| v)
    }

    fn body(&self, with_digest: bool) -> Value {
        let mut v = serde_json::to_value(self).expect("reports always serialize");
        if !with_digest {
            v.as_object_mut().expect("object").remove("determinismDigest");
        }
        v
    }

    /// SHA-256 (hex) of the canonical encoding without the digest field.
    pub fn compute_digest(&self) -> String {
        hex::encode(Sha256::digest(canonical_string(&self.body(false)).as_bytes()))
    }

    /// Fill in the determinism digest.
    pub fn finalize(mut self) -> Self {
        self.determinism_digest = self.compute_digest();
        self
    }

    pub fn digest_is_valid(&self) -> bool {
        self.determinism_digest == self.compute_digest()
    }

    /// Canonical JSON text, digest included.
    pub fn to_canonical_json(&self) -> String {
        canonical_string(&self.body(true))
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// CSV of the per-item rows: header is the sorted union of keys.
    pub fn to_csv(&self) -> String {
        let mut keys: Vec<&String> = self.per_item.iter().flat_map(|m| m.keys()).collect();
        keys.sort();
        keys.dedup();
        let mut out = keys.iter().map(|k| csv_field(k)).collect::<Vec<_>>().join(",");
        out.push('\n');
        for row in &self.per_item {
            let fields: Vec<String> = keys
                .iter()
                .map(|k| match row.get(*k) {
                    None | Some(Value::Null) => String::new(),
                    Some(Value::String(s)) => csv_field(s),
                    Some(v) => csv_field(&canonical_string(v)),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Canonical rendering of an arbitrary JSON value.
pub fn canonical_string(v: &Value) -> String {
    let mut out = String::new();
    write_canonical(v, &mut out);
    out
}

fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                write!(out, "{i}").expect("string write");
            } else if let Some(u) = n.as_u64() {
                write!(out, "{u}").expect("string write");
            } else {
                write!(out, "{:.16e}", n.as_f64().expect("finite float")).expect("string write");
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string")),
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(x, out);
            }
            out.push(']');
        }
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).expect("string"));
                out.push(':');
                write_canonical(&m[k], out);
            }
            out.push('}');
        }
    }
}
