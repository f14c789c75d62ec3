//! One structured report per invocation, printed to stdout. Maps are
//! ordered, floats serialize with round-trip precision, and nothing in the
//! layout depends on runtime state, so identical runs emit identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ReportValue {
    Bool(bool),
    Count(usize),
    Int(i64),
    Real(f64),
    Text(String),
    Complex([f64; 2]),
    RealList(Vec<f64>),
    ComplexList(Vec<[f64; 2]>),
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
    pub exit: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub outputs: BTreeMap<String, ReportValue>,
    pub residuals: BTreeMap<String, f64>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>) -> Self {
        Self {
            command: command.to_owned(),
            inputs,
            outputs: BTreeMap::new(),
            residuals: BTreeMap::new(),
            status: "ok".to_owned(),
            error: None,
        }
    }

    pub fn put(&mut self, key: &str, value: ReportValue) {
        self.outputs.insert(key.to_owned(), value);
    }

    pub fn residual(&mut self, key: &str, value: f64) {
        self.residuals.insert(key.to_owned(), value);
    }

    pub fn fail(&mut self, err: &CliError) {
        self.status = "error".to_owned();
        self.error = Some(ErrorInfo {
            code: err.code_name().to_owned(),
            message: err.to_string(),
            exit: err.exit_code(),
        });
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_is_stable_and_ordered() {
        let mut r = Report::new("demo", vec!["a.json".into()]);
        r.put("zeta", ReportValue::Count(1));
        r.put("alpha", ReportValue::Real(0.5));
        r.residual("b", 1e-12);
        r.residual("a", 0.0);
        let one = r.render();
        let two = r.render();
        assert_eq!(one, two);
        let alpha = one.find("\"alpha\"").unwrap();
        let zeta = one.find("\"zeta\"").unwrap();
        assert!(alpha < zeta);
        assert!(!one.contains("\"error\""));
    }

    #[test]
    fn failure_carries_code_and_exit() {
        let mut r = Report::new("demo", vec![]);
        r.fail(&CliError::Infeasible {
            reason: "no room".into(),
        });
        assert_eq!(r.status, "error");
        let body = r.render();
        assert!(body.contains("InfeasibleSpec"));
        assert!(body.contains("\"exit\": 4"));
    }
}
