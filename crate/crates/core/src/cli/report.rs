//! Reports: a JSON object with sorted keys, or a flat table of the same
//! content.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::complexes::Z2Ranks;
use crate::cyclic::PeriodicRanks;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: Vec<String>,
    /// `(name, source, canonical manifest text)` per input.
    pub inputs: Vec<(String, String, String)>,
    pub results: Value,
    pub metadata: Map<String, Value>,
    /// False when a mathematical check failed.
    pub passed: bool,
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn z2_json(r: Z2Ranks) -> Value {
    json!({ "even": r.even, "odd": r.odd })
}

pub fn periodic_json(p: &PeriodicRanks) -> Value {
    json!({
        "even": p.even,
        "odd": p.odd,
        "stabilized": p.stabilized,
        "previous": z2_json(p.previous),
        "window": { "height": p.height, "width": p.width },
    })
}

impl Report {
    pub fn to_json(&self) -> Value {
        let inputs: Map<String, Value> = self
            .inputs
            .iter()
            .map(|(name, source, text)| {
                (
                    name.clone(),
                    json!({ "source": source, "sha256": sha256_hex(text) }),
                )
            })
            .collect();
        let mut metadata = self.metadata.clone();
        metadata.insert("side".into(), json!("chain"));
        json!({
            "command": self.command,
            "inputs": inputs,
            "results": self.results,
            "metadata": metadata,
            "status": if self.passed { "ok" } else { "check_failed" },
        })
    }

    pub fn render(&self, format: Format) -> String {
        let value = self.to_json();
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Table => {
                let mut rows = Vec::new();
                flatten("", &value, &mut rows);
                let width = rows
                    .iter()
                    .map(|(k, _)| k.chars().count())
                    .max()
                    .unwrap_or(0);
                rows.iter()
                    .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                    .collect()
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let cells: Vec<String> = items.iter().map(scalar_cell).collect();
            out.push((prefix.to_string(), cells.join(" ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar_cell(other))),
    }
}

fn scalar_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            command: vec!["hp".into(), "--algebra".into(), "builtin:field".into()],
            inputs: vec![(
                "algebra".into(),
                "builtin:field".into(),
                "kind: algebra\n".into(),
            )],
            results: json!({ "odd": 0, "even": 1, "ranks": [1, 0] }),
            metadata: Map::from_iter([("cutoff".to_string(), json!(6))]),
            passed: true,
        }
    }

    #[test]
    fn keys_sorted_and_side_recorded() {
        let text = sample().render(Format::Json);
        let even = text.find("\"even\"").unwrap();
        let odd = text.find("\"odd\"").unwrap();
        assert!(even < odd);
        assert!(text.contains("\"side\": \"chain\""));
        assert!(text.contains(&sha256_hex("kind: algebra\n")));
    }

    #[test]
    fn table_rows() {
        let text = sample().render(Format::Table);
        assert!(text
            .lines()
            .any(|l| l.starts_with("results.ranks") && l.ends_with("1 0")));
        assert!(text
            .lines()
            .any(|l| l.starts_with("status") && l.ends_with("ok")));
    }

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
