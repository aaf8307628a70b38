use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// What a subcommand produced: a JSON body, an optional CSV table, and
/// whether a mathematical invariant was violated.
pub struct Outcome {
    pub command: &'static str,
    pub body: Value,
    pub table: Option<String>,
    pub violated: bool,
    /// Print the table whatever the requested format.
    pub verbatim: bool,
}

impl Outcome {
    pub fn new(command: &'static str, body: impl Serialize) -> Self {
        Self {
            command,
            body: serde_json::to_value(body).expect("reports serialize"),
            table: None,
            violated: false,
            verbatim: false,
        }
    }

    pub fn with_table(mut self, table: String) -> Self {
        self.table = Some(table);
        self
    }

    pub fn violated_if(mut self, violated: bool) -> Self {
        self.violated = violated;
        self
    }

    pub fn verbatim(mut self) -> Self {
        self.verbatim = true;
        self
    }

    pub fn render(&self, format: OutputFormat) -> String {
        if let (true, Some(t)) = (self.verbatim, &self.table) {
            return t.clone();
        }
        match format {
            OutputFormat::Json => {
                let mut top = Map::new();
                top.insert("schema_version".into(), json!(SCHEMA_VERSION));
                top.insert("command".into(), json!(self.command));
                match &self.body {
                    Value::Object(fields) => top.extend(fields.clone()),
                    other => {
                        top.insert("result".into(), other.clone());
                    }
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json");
                s.push('\n');
                s
            }
            OutputFormat::Csv => {
                if let Some(t) = &self.table {
                    return t.clone();
                }
                let mut s = format!(
                    "key,value\nschema_version,{SCHEMA_VERSION}\ncommand,{}\n",
                    self.command
                );
                if let Value::Object(fields) = &self.body {
                    for (k, v) in fields {
                        let text = match v {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        s.push_str(&format!("{k},{}\n", csv_field(&text)));
                    }
                }
                s
            }
        }
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
