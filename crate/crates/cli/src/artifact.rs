use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "ffmoduli/1";

/// The JSON record written by every command. Keys are emitted in sorted
/// order and carry no wall-clock data outside `timing`, so a rerun with the
/// same inputs reproduces the file byte for byte apart from that field.
pub struct Artifact {
    fields: Map<String, Value>,
    failures: Vec<Value>,
}

impl Artifact {
    pub fn new(command: &str, seed: u64, params: Value) -> Artifact {
        let mut fields = Map::new();
        fields.insert("schema".into(), json!(SCHEMA));
        fields.insert("command".into(), json!(command));
        fields.insert("seed".into(), json!(seed));
        fields.insert("params".into(), params);
        fields.insert("versions".into(), json!({ "ffmoduli": env!("CARGO_PKG_VERSION") }));
        Artifact {
            fields,
            failures: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("artifact values serialize");
        self.fields.insert(key.to_string(), v);
    }

    /// Records a failed assertion unless `ok`.
    pub fn require(&mut self, ok: bool, check: Value) {
        if !ok {
            self.failures.push(check);
        }
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures(&self) -> &[Value] {
        &self.failures
    }

    pub fn into_value(mut self) -> Value {
        let pass = self.pass();
        self.fields.insert("pass".into(), json!(pass));
        if !pass {
            self.fields.insert("failures".into(), Value::Array(self.failures));
        }
        Value::Object(self.fields)
    }
}

pub fn emit(value: &Value, out: Option<&Path>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    match out {
        Some(path) => std::fs::write(path, text + "\n"),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")
        }
    }
}
