//! Output records and the CSV/JSON emitters.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// One scalar observable at one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarRecord {
    pub z: f64,
    pub gamma: Option<f64>,
    pub observable: &'static str,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Value(f64),
    /// The quantity has no finite value here (vanishing commutator at z = 0).
    Undefined,
    /// Evaluation failed; the sweep carries on.
    Failed(String),
}

impl ScalarRecord {
    fn value_and_error(&self) -> (Option<f64>, Option<String>) {
        match &self.outcome {
            Outcome::Value(v) => (Some(*v), None),
            Outcome::Undefined => (None, Some("undefined: commutator vanishes at z = 0".into())),
            Outcome::Failed(message) => (None, Some(message.clone())),
        }
    }
}

/// JSON wire form of a scalar record; field order is the column order.
#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct JsonRecord {
    pub z: f64,
    pub gamma: Option<f64>,
    pub observable: String,
    pub value: Option<f64>,
    pub error: Option<String>,
}

/// Phase-distribution sweep in wide form: one column per z value.
#[derive(Debug, Clone)]
pub struct DistributionTable {
    pub theta: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Shortest round-trip float text, switching to scientific notation where
/// plain decimal would sprawl.
fn fmt_float(value: f64) -> String {
    let magnitude = value.abs();
    if value != 0.0 && !(1e-6..1e15).contains(&magnitude) {
        format!("{value:e}")
    } else {
        value.to_string()
    }
}

pub fn scalars_to_csv(records: &[ScalarRecord]) -> String {
    let mut out = String::from("z,gamma,observable,value,error\n");
    for record in records {
        let gamma = record.gamma.map(fmt_float).unwrap_or_default();
        let (value, error) = record.value_and_error();
        let value = match (&record.outcome, value) {
            (Outcome::Undefined, _) => "undefined".to_string(),
            (_, Some(v)) => fmt_float(v),
            _ => String::new(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_float(record.z),
            gamma,
            record.observable,
            value,
            csv_escape(&error.unwrap_or_default())
        );
    }
    out
}

pub fn scalars_to_json(records: &[ScalarRecord]) -> String {
    let wire: Vec<JsonRecord> = records
        .iter()
        .map(|record| {
            let (value, error) = record.value_and_error();
            JsonRecord {
                z: record.z,
                gamma: record.gamma,
                observable: record.observable.to_string(),
                value,
                error,
            }
        })
        .collect();
    serde_json::to_string_pretty(&wire).expect("records serialize")
}

pub fn table_to_csv(table: &DistributionTable) -> String {
    let mut out = String::from("theta");
    for (name, _) in &table.columns {
        let _ = write!(out, ",{}", csv_escape(name));
    }
    out.push('\n');
    for (j, theta) in table.theta.iter().enumerate() {
        let _ = write!(out, "{}", fmt_float(*theta));
        for (_, values) in &table.columns {
            let _ = write!(out, ",{}", fmt_float(values[j]));
        }
        out.push('\n');
    }
    out
}

pub fn table_to_json(table: &DistributionTable) -> String {
    let rows: Vec<serde_json::Value> = table
        .theta
        .iter()
        .enumerate()
        .map(|(j, theta)| {
            let mut object = serde_json::Map::new();
            object.insert("theta".into(), serde_json::json!(theta));
            for (name, values) in &table.columns {
                object.insert(name.clone(), serde_json::json!(values[j]));
            }
            serde_json::Value::Object(object)
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("table serializes")
}
