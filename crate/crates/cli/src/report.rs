use std::time::Duration;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Everything one invocation reports. Keys serialize in sorted order, so two
/// runs on the same inputs differ only in `elapsed_ms`.
pub struct RunReport {
    pub subcommand: String,
    pub inputs_digest: String,
    pub params: Value,
    pub result: Value,
    pub elapsed: Duration,
}

/// SHA-256 over the inputs, each prefixed by its length.
pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        json!({
            "subcommand": self.subcommand,
            "inputs_digest": self.inputs_digest,
            "params": self.params,
            "result": self.result,
            "version": env!("CARGO_PKG_VERSION"),
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

pub fn emit(report: &RunReport, format: Format) -> String {
    let v = report.to_json();
    match format {
        Format::Json => serde_json::to_string_pretty(&v).expect("reports are plain JSON"),
        Format::Table => table(&v),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_owned() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_owned(), s.clone())),
        other => out.push((prefix.to_owned(), other.to_string())),
    }
}

/// One `key  value` line per leaf, keys padded to a common width.
fn table(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, x)| format!("{k:<width$}  {x}\n")).collect()
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_owned(), v)).collect::<Map<_, _>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        RunReport {
            subcommand: "limit eq".into(),
            inputs_digest: digest(&[b"abc"]),
            params: json!({"depth": 32}),
            result: json!({"verdict": "EQUAL", "stage": 1, "path": [1, 2]}),
            elapsed: Duration::from_millis(3),
        }
    }

    #[test]
    fn json_reparses_to_the_same_value() {
        let r = sample();
        let text = emit(&r, Format::Json);
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), r.to_json());
        assert_eq!(text, emit(&r, Format::Json));
    }

    #[test]
    fn table_is_aligned() {
        let text = emit(&sample(), Format::Table);
        assert!(text.contains("result.verdict  EQUAL\n"));
        assert!(text.contains("result.path     [1,2]\n"));
    }

    #[test]
    fn digest_separates_inputs() {
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
    }
}
