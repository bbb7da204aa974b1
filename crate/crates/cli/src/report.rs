use serde::Serialize;
use serde_json::Value;

/// Envelope shared by every subcommand. `config` is the fully resolved
/// command line, defaults and environment included.
#[derive(Serialize)]
pub struct Report<'a, C: Serialize, R: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a C,
    pub result: R,
}

impl<'a, C: Serialize, R: Serialize> Report<'a, C, R> {
    pub fn new(command: &'a str, config: &'a C, result: R) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            result,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

pub fn render(value: &impl Serialize, format: Format) -> anyhow::Result<String> {
    let value = serde_json::to_value(value)?;
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&value)? + "\n",
        Format::Text => {
            let mut out = String::new();
            flatten(&value, "", &mut out);
            out
        }
    })
}

/// One `path = value` line per leaf; arrays of scalars stay on one line.
fn flatten(v: &Value, path: &str, out: &mut String) {
    let join = |key: &str| if path.is_empty() { key.to_string() } else { format!("{path}.{key}") };
    match v {
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str(&format!("{path} = {{}}\n"));
            }
            for (key, child) in map {
                flatten(child, &join(key), out);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{path} = [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(child, &format!("{path}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{path} = {}\n", scalar(other))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
