//! Report records and their JSON and text renderings.

use serde::ser::Serializer;
use serde::Serialize;

/// A reported value. Infinities and NaN serialize as the string tokens
/// `"-inf"`, `"inf"` and `"nan"`.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Text(String),
}

impl Value {
    pub fn render(&self) -> String {
        match self {
            Value::Number(v) => format_number(*v),
            Value::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Number(v)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Number(v) if v.is_finite() => serializer.serialize_f64(*v),
            Value::Number(v) => serializer.serialize_str(&format_number(*v)),
            Value::Text(s) => serializer.serialize_str(s),
        }
    }
}

/// Shortest round-trip form; exponent notation for very small or large
/// magnitudes.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else if v == f64::INFINITY {
        "inf".into()
    } else if v != 0.0 && (v.abs() < 1e-4 || v.abs() >= 1e15) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Bits,
    Dimensionless,
    Count,
    Distance,
    Label,
}

impl Unit {
    fn as_str(self) -> &'static str {
        match self {
            Unit::Bits => "bits",
            Unit::Dimensionless => "dimensionless",
            Unit::Count => "count",
            Unit::Distance => "distance",
            Unit::Label => "label",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Input {
    pub name: String,
    pub value: String,
}

/// Published value for comparison, present only in reproduction reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reference {
    pub published: Value,
    pub delta: Value,
    pub tolerance: Value,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Output {
    pub name: String,
    pub value: Value,
    pub unit: Unit,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<Reference>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub command: String,
    pub inputs: Vec<Input>,
    pub outputs: Vec<Output>,
    pub warnings: Vec<String>,
}

impl ReportRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, name: &str, value: impl Into<String>) {
        self.inputs.push(Input {
            name: name.to_string(),
            value: value.into(),
        });
    }

    pub fn output(&mut self, name: impl Into<String>, value: impl Into<Value>, unit: Unit) {
        self.outputs.push(Output {
            name: name.into(),
            value: value.into(),
            unit,
            reference: None,
        });
    }

    pub fn warn(&mut self, text: impl Into<String>) {
        self.warnings.push(text.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command  {}\n", self.command);
        if !self.inputs.is_empty() {
            out.push_str("inputs\n");
            let w = self.inputs.iter().map(|i| i.name.len()).max().unwrap_or(0);
            for i in &self.inputs {
                out.push_str(&format!("  {:<w$}  {}\n", i.name, i.value));
            }
        }
        out.push_str("outputs\n");
        let rows: Vec<[String; 3]> = self
            .outputs
            .iter()
            .map(|o| [o.name.clone(), o.value.render(), o.unit.as_str().to_string()])
            .collect();
        let w0 = rows.iter().map(|r| r[0].len()).max().unwrap_or(0);
        let w1 = rows.iter().map(|r| r[1].len()).max().unwrap_or(0);
        let w2 = rows.iter().map(|r| r[2].len()).max().unwrap_or(0);
        for (o, r) in self.outputs.iter().zip(&rows) {
            let mut line = format!("  {:<w0$}  {:>w1$}  {:<w2$}", r[0], r[1], r[2]);
            if let Some(reference) = &o.reference {
                line.push_str(&format!(
                    "  published={}  delta={}  {}",
                    reference.published.render(),
                    reference.delta.render(),
                    reference.status
                ));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        if !self.warnings.is_empty() {
            out.push_str("warnings\n");
            for w in &self.warnings {
                out.push_str(&format!("  {w}\n"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinities_are_tokens() {
        let json = serde_json::to_string(&Value::Number(f64::NEG_INFINITY)).unwrap();
        assert_eq!(json, "\"-inf\"");
        assert_eq!(format_number(f64::INFINITY), "inf");
    }

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, 5.517706098e-7, 123456.789, -0.808080808080808] {
            let json = serde_json::to_string(&Value::Number(v)).unwrap();
            assert_eq!(json.parse::<f64>().unwrap(), v);
            assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn key_order_is_fixed() {
        let mut r = ReportRecord::new("doc");
        r.input("table", "1,2,3,4");
        r.output("b_star", 0.5, Unit::Dimensionless);
        let json = r.to_json();
        let keys = ["\"command\"", "\"inputs\"", "\"outputs\"", "\"warnings\""];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }
}
