//! Machine-readable reports, written bit-stably.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::numerics::linalg::C64;

pub const REPORT_SCHEMA: &str = "annulus.report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// How a check compares its value against the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `residual <= threshold`
    AtMost,
    /// `residual > threshold`
    Above,
    /// `residual == threshold` (counts)
    Equal,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Above => ">",
            Relation::Equal => "==",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        let pass = residual.is_finite() && residual <= threshold;
        Self { name: name.into(), residual, threshold, relation: Relation::AtMost, pass }
    }

    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        let pass = value.is_finite() && value > threshold;
        Self { name: name.into(), residual: value, threshold, relation: Relation::Above, pass }
    }

    pub fn equal(name: impl Into<String>, observed: usize, expected: usize) -> Self {
        Self {
            name: name.into(),
            residual: observed as f64,
            threshold: expected as f64,
            relation: Relation::Equal,
            pass: observed == expected,
        }
    }

    fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), Value::from(self.name.clone()));
        m.insert("residual".into(), float(self.residual));
        m.insert("threshold".into(), float(self.threshold));
        m.insert("relation".into(), Value::from(self.relation.symbol()));
        m.insert("pass".into(), Value::from(self.pass));
        Value::Object(m)
    }
}

/// A float value; non-finite numbers become `null`.
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn complex(z: C64) -> Value {
    Value::Array(vec![float(z.re), float(z.im)])
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    /// Free-form results, keyed by name.
    pub data: BTreeMap<String, Value>,
    /// Input name → SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        Self {
            suite: suite.into(),
            checks: Vec::new(),
            data: BTreeMap::new(),
            inputs: BTreeMap::new(),
            seed,
            tolerances: BTreeMap::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn put(&mut self, key: impl Into<String>, v: impl Into<Value>) {
        self.data.insert(key.into(), v.into());
    }

    pub fn add_input(&mut self, name: impl Into<String>, bytes: &[u8]) {
        self.inputs.insert(name.into(), hex::encode(Sha256::digest(bytes)));
    }

    /// Appends every check of `other` under a name prefix and merges its data.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
        self.data.insert(prefix.to_string(), Value::Object(other.data.into_iter().collect()));
        self.inputs.extend(other.inputs);
    }

    pub fn to_value(&self) -> Value {
        let mut prov = Map::new();
        prov.insert(
            "inputs".into(),
            Value::Object(self.inputs.iter().map(|(k, v)| (k.clone(), Value::from(v.clone()))).collect()),
        );
        prov.insert("seed".into(), Value::from(self.seed));
        prov.insert("version".into(), Value::from(VERSION));
        prov.insert(
            "tolerances".into(),
            Value::Object(self.tolerances.iter().map(|(k, v)| (k.clone(), float(*v))).collect()),
        );
        let mut m = Map::new();
        m.insert("schema".into(), Value::from(REPORT_SCHEMA));
        m.insert("suite".into(), Value::from(self.suite.clone()));
        m.insert("pass".into(), Value::from(self.pass()));
        m.insert("checks".into(), Value::Array(self.checks.iter().map(Check::to_value).collect()));
        m.insert("data".into(), Value::Object(self.data.clone().into_iter().collect()));
        m.insert("provenance".into(), Value::Object(prov));
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        canonical_json(&self.to_value())
    }

    /// One row per check.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "residual", "relation", "threshold", "pass"]).expect("in-memory write");
        for c in &self.checks {
            w.write_record([
                c.name.clone(),
                fmt_float(c.residual),
                c.relation.symbol().to_string(),
                fmt_float(c.threshold),
                c.pass.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is UTF-8")
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// JSON with sorted object keys, no whitespace except newlines between top-level entries of
/// arrays of objects, integers verbatim and floats via [`fmt_float`].
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else {
                out.push_str(&fmt_float(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            let nested = items.iter().any(|x| x.is_object());
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                if nested {
                    newline(out, depth + 1);
                }
                write_value(out, item, depth + 1);
            }
            if nested && !items.is_empty() {
                newline(out, depth);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (k, key) in keys.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                newline(out, depth + 1);
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[*key], depth + 1);
            }
            if !keys.is_empty() {
                newline(out, depth);
            }
            out.push('}');
        }
    }
}

fn newline(out: &mut String, depth: usize) {
    out.push('\n');
    for _ in 0..depth {
        out.push_str("  ");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits_and_keys_are_sorted() {
        let mut r = Report::new("t", 7);
        r.put("b", float(0.1));
        r.put("a", 3u64);
        let s = r.to_json();
        assert!(s.contains("1.0000000000000001e-1"), "{s}");
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["provenance"]["seed"], 7);
    }

    #[test]
    fn failing_check_fails_report() {
        let mut r = Report::new("t", 0);
        r.check(Check::at_most("x", 1e-3, 1e-9));
        assert!(!r.pass());
        r.checks.clear();
        r.check(Check::at_most("nan", f64::NAN, 1.0));
        assert!(!r.pass());
    }
}
