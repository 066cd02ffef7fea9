use lcs_core::algebra::KForm;
use lcs_core::linalg::Matrix;
use lcs_core::Scalar;
use nalgebra::DMatrix;
use serde_json::{json, Map, Value};

use crate::Format;

/// Ordered fields of a command's result; each carries its machine value and
/// the line shown in text mode.
pub struct Report {
    command: &'static str,
    fields: Vec<(String, Value, String)>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, fields: Vec::new() }
    }

    pub fn put(&mut self, key: &str, value: Value) {
        let text = plain(&value);
        self.put_text(key, value, text);
    }

    pub fn put_text(&mut self, key: &str, value: Value, text: String) {
        self.fields.push((key.to_string(), value, text));
    }

    pub fn put_form<S: Scalar>(&mut self, key: &str, form: &KForm<S>) {
        self.put_text(key, form_value(form), form.to_string());
    }

    pub fn put_forms<S: Scalar>(&mut self, key: &str, forms: &[KForm<S>]) {
        self.put_text(key, Value::Array(forms.iter().map(form_value).collect()), list_text(forms));
    }

    pub fn render(&self, format: Format, code: i32) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for (key, _, text) in &self.fields {
                    if text.contains('\n') {
                        out.push_str(&format!("{key}:\n{text}\n"));
                    } else {
                        out.push_str(&format!("{key}: {text}\n"));
                    }
                }
                out
            }
            Format::Machine => {
                let mut doc = Map::new();
                doc.insert("command".into(), json!(self.command));
                for (key, value, _) in &self.fields {
                    doc.insert(key.clone(), value.clone());
                }
                doc.insert("exit_code".into(), json!(code));
                let mut s = serde_json::to_string(&Value::Object(doc)).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}

fn plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) if items.iter().all(Value::is_array) => {
            items.iter().map(|row| format!("  {}", plain(row))).collect::<Vec<_>>().join("\n")
        }
        Value::Array(items) => format!("[{}]", items.iter().map(plain).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => map.iter().map(|(k, v)| format!("  {k}: {}", plain(v))).collect::<Vec<_>>().join("\n"),
        other => other.to_string(),
    }
}

pub fn list_text<S: Scalar>(forms: &[KForm<S>]) -> String {
    format!("[{}]", forms.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// `{"degree": k, "terms": [["c", [i1, …]], …]}` with canonical coefficients.
pub fn form_value<S: Scalar>(form: &KForm<S>) -> Value {
    let terms: Vec<Value> = form.terms().map(|(idx, c)| json!([c.to_canonical(), idx])).collect();
    json!({ "degree": form.degree(), "terms": terms })
}

/// Row-major canonical strings.
pub fn matrix_value<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array(m.to_rows().iter().map(|row| Value::Array(row.iter().map(|x| json!(x.to_canonical())).collect())).collect())
}

pub fn float(x: f64) -> Value {
    Value::String(format!("{x:.16e}"))
}

pub fn float_matrix(m: &DMatrix<f64>) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array((0..m.ncols()).map(|j| float(m[(i, j)])).collect())).collect())
}
