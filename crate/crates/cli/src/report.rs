//! Reports: one per command, rendered as text or as JSON with sorted keys.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Duration;

use serde_json::{json, Value};

/// Version of the JSON layout.
pub const SCHEMA: u64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Check {
        Check {
            name: name.into(),
            passed,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Check {
        if !self.passed {
            self.witness = Some(witness);
        }
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub data: Value,
    pub wall_time: Option<Duration>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            data: Value::Null,
            ..Report::default()
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Report {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// JSON with sorted keys; the wall time is only included when `timing` is set,
    /// so identical inputs give byte-identical output.
    pub fn to_json(&self, timing: bool) -> String {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({
                    "name": c.name,
                    "status": if c.passed { "pass" } else { "fail" },
                });
                if let Some(w) = &c.witness {
                    v["witness"] = w.clone();
                }
                v
            })
            .collect();
        let mut out = json!({
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "checks": checks,
            "passed": self.passed(),
        });
        if !self.data.is_null() {
            out["data"] = self.data.clone();
        }
        if let (true, Some(t)) = (timing, self.wall_time) {
            out["wall_time_ms"] = json!(t.as_millis() as u64);
        }
        serde_json::to_string_pretty(&out).expect("plain JSON values")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "schroq {}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for c in &self.checks {
            let _ = writeln!(s, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            if let Some(w) = &c.witness {
                let _ = writeln!(s, "     witness: {w}");
            }
        }
        if !self.data.is_null() {
            let _ = writeln!(s, "data:");
            write_value(&mut s, &self.data, 1);
        }
        let _ = writeln!(
            s,
            "{}",
            if self.passed() {
                "result: pass"
            } else {
                "result: FAIL"
            }
        );
        if let Some(t) = self.wall_time {
            let _ = writeln!(s, "wall time: {:.3} s", t.as_secs_f64());
        }
        s
    }
}

fn write_value(s: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if x.is_object() || (x.is_array() && !is_flat(x)) {
                    let _ = writeln!(s, "{pad}{k}:");
                    write_value(s, x, indent + 1);
                } else {
                    let _ = writeln!(s, "{pad}{k}: {}", scalar_text(x));
                }
            }
        }
        Value::Array(items) if !is_flat(v) => {
            for x in items {
                let _ = writeln!(s, "{pad}-");
                write_value(s, x, indent + 1);
            }
        }
        other => {
            let _ = writeln!(s, "{pad}{}", scalar_text(other));
        }
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_sorted_and_versioned() {
        let mut r = Report::new("casimir").input("z", "z").input("lambda", "w");
        r.check(Check::new("b", true));
        r.check(Check::new("a", false).with_witness(json!({"row": 0})));
        r.wall_time = Some(Duration::from_millis(5));
        let text = r.to_json(false);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], 1);
        assert!(v.get("wall_time_ms").is_none());
        assert!(text.find("\"lambda\"").unwrap() < text.find("\"z\"").unwrap());
        assert_eq!(v["checks"][1]["witness"]["row"], 0);
        assert_eq!(r.to_json(false), text);
        assert!(r.to_json(true).contains("wall_time_ms"));
    }

    #[test]
    fn text_lists_every_check() {
        let mut r = Report::new("x");
        r.check(Check::new("one", true));
        r.check(Check::new("two", false));
        r.data = json!({"dims": [1, 2], "nested": {"k": "v"}});
        let t = r.to_text();
        assert!(t.contains("PASS one") && t.contains("FAIL two"));
        assert!(t.contains("dims: [1,2]") && t.contains("k: v"));
        assert!(!r.passed());
    }
}
