use std::io::Write;
use std::path::Path;

use lcycle::io::{from_binary, from_json, InstanceMeta};
use lcycle::KGraph;
use serde_json::{json, Map, Value};

use crate::{CliResult, Failure};

/// Reads a JSON or binary instance; JSON is recognized by a leading `{`.
pub fn read_instance(path: &Path) -> CliResult<(KGraph, Option<InstanceMeta>)> {
    let bytes = std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let first = bytes.iter().find(|b| !b.is_ascii_whitespace());
    let parsed = if first == Some(&b'{') {
        let text = std::str::from_utf8(&bytes).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        from_json(text)
    } else {
        from_binary(&bytes).map(|g| (g, None))
    };
    parsed.map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn emit_json(path: Option<&Path>, value: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(path, text.as_bytes())
}

/// `{"schema_version", "library_version"}` followed by `fields`.
pub fn versioned(fields: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(lcycle::SCHEMA_VERSION));
    map.insert("library_version".into(), json!(lcycle::LIBRARY_VERSION));
    if let Value::Object(rest) = fields {
        map.extend(rest);
    }
    Value::Object(map)
}

pub struct Stopwatch(std::time::Instant, bool);

impl Stopwatch {
    /// A stopwatch that always reads 0 when `frozen`.
    pub fn start(frozen: bool) -> Stopwatch {
        Stopwatch(std::time::Instant::now(), frozen)
    }

    pub fn ms(&self) -> f64 {
        if self.1 {
            0.0
        } else {
            (self.0.elapsed().as_secs_f64() * 1e6).round() / 1e3
        }
    }
}
