use clap::ValueEnum;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Everything a subcommand produced; rendering picks one view.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
    /// False when a verification found a nonzero residual.
    pub verified: bool,
}

impl Report {
    pub fn new(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            csv: None,
            verified: true,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn verified(mut self, ok: bool) -> Self {
        self.verified = ok;
        self
    }

    pub fn render(&self, format: Format, command: &str) -> Result<String, CliError> {
        let mut out = match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json)?,
            Format::Csv => self.csv.clone().ok_or_else(|| {
                CliError::Usage(format!("{command} has no CSV output; use text or json"))
            })?,
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        Ok(out)
    }
}

/// 17 significant digits, scientific notation; `nan` when undefined.
pub fn csv_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub fn json_float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}
