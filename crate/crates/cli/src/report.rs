use fischerlab::{format_polynomial, Poly};
use serde_json::{json, Map, Value};

use crate::{Format, EXIT_FAILURE, EXIT_OK, EXIT_UNDETERMINED};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    Failed,
    Undetermined,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Verified => EXIT_OK,
            Outcome::Failed => EXIT_FAILURE,
            Outcome::Undetermined => EXIT_UNDETERMINED,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Outcome::Verified => "verified",
            Outcome::Failed => "verification failed",
            Outcome::Undetermined => "UNDETERMINED: inconclusive within the slack limit",
        }
    }
}

/// Everything a subcommand produces, ready to be rendered in any format.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub config: Map<String, Value>,
    pub result: Value,
    pub checks: Map<String, Value>,
    pub text: String,
    /// Header and rows for `--format csv`, when the command has tabular output.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    pub outcome: Outcome,
}

impl Report {
    pub fn envelope(&self) -> Value {
        json!({
            "tool_version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "config": self.config,
            "result": self.result,
            "checks": self.checks,
        })
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.envelope()).expect("json values serialize");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let (header, rows) = self
                    .table
                    .as_ref()
                    .ok_or_else(|| format!("`{}` has no tabular output; use --format text or json", self.command))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(header).map_err(|e| e.to_string())?;
                for r in rows {
                    w.write_record(r).map_err(|e| e.to_string())?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
            }
        }
    }
}

/// Shortest round-trip decimal form in scientific notation.
pub fn float(x: f64) -> String {
    format!("{x:e}")
}

pub fn poly_value(p: &Poly, vars: &[String]) -> Value {
    json!({
        "text": format_polynomial(p, vars),
        "poly": serde_json::to_value(p).expect("polynomials serialize"),
    })
}
