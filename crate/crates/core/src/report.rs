//! Check verdicts, failure records and canonical report serialization.

use std::fmt;

use serde_json::{json, Map, Value};

/// Outcome of a checked property with an optional witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Stable failure codes. These appear in JSON reports and are part of the
/// compatibility surface.
pub mod codes {
    pub const JACOBI: &str = "JACOBI";
    pub const ORACLE_MISMATCH: &str = "ORACLE-MISMATCH";
    pub const LAW_UNIT: &str = "LAW-UNIT";
    pub const LAW_LINEAR: &str = "LAW-LINEAR";
    pub const LAW_ASSOCIATIVITY: &str = "LAW-ASSOCIATIVITY";
    pub const LAW_INVERSE: &str = "LAW-INVERSE";
    pub const LAW_CONSTANT: &str = "LAW-CONSTANT";
    pub const PRIMITIVES: &str = "PRIMITIVES";
    pub const HOPF_COASSOCIATIVITY: &str = "HOPF-COASSOCIATIVITY";
    pub const HOPF_COUNIT: &str = "HOPF-COUNIT";
    pub const HOPF_ANTIPODE: &str = "HOPF-ANTIPODE";
    pub const HOPF_COMPATIBILITY: &str = "HOPF-COMPATIBILITY";
    pub const HOPF_ASSOCIATIVITY: &str = "HOPF-ASSOCIATIVITY";
    pub const HOPF_UNIT: &str = "HOPF-UNIT";
    pub const PAIR_SHAPE: &str = "PAIR-SHAPE";
    pub const PAIR_JACOBI: &str = "PAIR-JACOBI";
    pub const PAIR_IOTA_HOMOMORPHISM: &str = "PAIR-IOTA-HOMOMORPHISM";
    pub const PAIR_IOTA_INJECTIVE: &str = "PAIR-IOTA-INJECTIVE";
    pub const PAIR_SINGULAR_ACTION: &str = "PAIR-SINGULAR-ACTION";
    pub const PAIR_AUTOMORPHISM: &str = "PAIR-AUTOMORPHISM";
    pub const PAIR_EQUIVARIANCE: &str = "PAIR-EQUIVARIANCE";
    pub const PAIR_INFINITESIMAL: &str = "PAIR-INFINITESIMAL";
    pub const PAIR_KERNEL_IDEAL: &str = "PAIR-KERNEL-IDEAL";
    pub const PAIR_QUOTIENT_MAP: &str = "PAIR-QUOTIENT-MAP";
    pub const PAIR_THETA: &str = "PAIR-THETA";
    pub const HOM_DPHI: &str = "HOM-DPHI";
    pub const HOM_IOTA: &str = "HOM-IOTA";
    pub const HOM_L_RESTRICTION: &str = "HOM-L-RESTRICTION";
    pub const HOM_ADJOINT: &str = "HOM-ADJOINT";
    pub const DATUM_EMBEDDING_NOT_CLOSED: &str = "DATUM-EMBEDDING-NOT-CLOSED";
    pub const DATUM_EMBEDDING_DEPENDENT: &str = "DATUM-EMBEDDING-DEPENDENT";
    pub const DATUM_LAW: &str = "DATUM-LAW";
    pub const DATUM_EQUIVARIANCE: &str = "DATUM-EQUIVARIANCE";
    pub const DATUM_ACTION_NOT_PRESERVING: &str = "DATUM-ACTION-NOT-PRESERVING";
    pub const DATUM_INVALID_PAIR: &str = "DATUM-INVALID-PAIR";
    pub const ROUNDTRIP_MISMATCH: &str = "ROUNDTRIP-MISMATCH";
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
    pub witness: Value,
}

impl Failure {
    pub fn new(code: &'static str, message: impl Into<String>, witness: Value) -> Self {
        Failure {
            code,
            message: message.into(),
            witness,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "code": self.code,
            "message": self.message,
            "witness": self.witness,
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.code, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Result of one command: failures plus named data sections. Text lines are
/// the human rendering of the data and are not part of the JSON form.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub failures: Vec<Failure>,
    pub data: Map<String, Value>,
    pub lines: Vec<String>,
}

pub const SCHEMA: &str = "flk/1";

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, failure: Failure) {
        self.failures.push(failure);
    }

    pub fn extend(&mut self, failures: impl IntoIterator<Item = Failure>) {
        self.failures.extend(failures);
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.data.insert(key.to_string(), value);
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn to_json(&self) -> Value {
        let mut obj = self.data.clone();
        obj.insert("schema".into(), Value::from(SCHEMA));
        obj.insert("command".into(), Value::from(self.command.clone()));
        obj.insert(
            "status".into(),
            Value::from(if self.ok() { "ok" } else { "fail" }),
        );
        obj.insert(
            "failures".into(),
            Value::Array(self.failures.iter().map(Failure::to_json).collect()),
        );
        Value::Object(obj)
    }
}

/// Canonical serialization. JSON objects come out with sorted keys (the
/// `serde_json` map is ordered), so equal reports are byte-identical.
pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(&report.to_json()).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("{}: {}\n", report.command, if report.ok() { "ok" } else { "FAIL" }));
            for l in &report.lines {
                out.push_str(l);
                out.push('\n');
            }
            for f in &report.failures {
                out.push_str(&format!("failure {f}\n"));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_json() {
        let r = Report::new("validate");
        assert_eq!(
            emit_report(&r, Format::Json),
            "{\"command\":\"validate\",\"failures\":[],\"schema\":\"flk/1\",\"status\":\"ok\"}\n"
        );
    }

    #[test]
    fn failure_report_json() {
        let mut r = Report::new("validate");
        r.set("zeta", json!(1));
        r.set("alpha", json!("x"));
        r.fail(Failure::new(codes::JACOBI, "bad", json!({"triple": [0, 1, 2]})));
        let s = emit_report(&r, Format::Json);
        assert!(s.starts_with("{\"alpha\":\"x\",\"command\""));
        assert!(s.contains("\"status\":\"fail\""));
        assert!(s.contains("{\"code\":\"JACOBI\",\"message\":\"bad\",\"witness\":{\"triple\":[0,1,2]}}"));
        let text = emit_report(&r, Format::Text);
        assert!(text.contains("failure [JACOBI] bad"));
    }
}
