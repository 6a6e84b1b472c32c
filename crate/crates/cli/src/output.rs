//! Deterministic output writers. Identical spec and seed produce
//! byte-identical files: keys are sorted, floats print shortest-round-trip,
//! and nothing time- or host-dependent is embedded.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use jointensor_core::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Wrap a payload with the schema tag, library version, and spec echo.
pub fn envelope(schema: &str, spec: Value, payload: Value) -> Value {
    let mut out = json!({
        "schema": schema,
        "version": VERSION,
        "spec": spec,
    });
    if let Value::Object(payload) = payload {
        for (k, v) in payload {
            out[k] = v;
        }
    }
    out
}

pub fn write_json(out: Option<&Path>, value: &Value) -> Result<(), Error> {
    let text = format!("{}\n", serde_json::to_string_pretty(value).expect("valid JSON"));
    write_text(out, &text)
}

/// CSV with a `# schema=...` comment first, then the header and rows.
pub fn write_csv(
    out: Option<&Path>,
    schema: &str,
    spec: &Value,
    header: &str,
    rows: &[String],
) -> Result<(), Error> {
    let mut text = String::new();
    text.push_str(&format!(
        "# schema={schema} version={VERSION} spec={}\n",
        serde_json::to_string(spec).expect("valid JSON")
    ));
    text.push_str(header);
    text.push('\n');
    for row in rows {
        text.push_str(row);
        text.push('\n');
    }
    write_text(out, &text)
}

pub fn write_text(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, text)?;
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
