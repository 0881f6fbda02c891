use serde::Serialize;
use serde_json::{Map, Value};

/// Rule by which scans derive per-trial random streams from the master seed.
pub const SEED_RULE: &str = "trial k draws ChaCha8 stream k of the master seed";

/// A number together with the threshold it is judged against.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// `"<="` or `">="`.
    pub relation: &'static str,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, relation: "<=", threshold, pass: value <= threshold }
    }

    pub fn at_least(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, relation: ">=", threshold, pass: value >= threshold }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub version: &'static str,
    pub seed: u64,
    pub seed_rule: &'static str,
    pub inputs: Value,
    pub outputs: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, seed: u64, inputs: Value) -> Self {
        Self {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION"),
            seed,
            seed_rule: SEED_RULE,
            inputs,
            outputs: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.outputs.insert(key.into(), v);
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_compare_with_threshold() {
        assert!(Check::at_most("a", 1.0, 1.0).pass);
        assert!(!Check::at_most("a", 1.5, 1.0).pass);
        assert!(Check::at_least("a", 0.0, -1e-9).pass);
    }

    #[test]
    fn report_is_stable() {
        let mut r = Report::new("x", 3, Value::Null);
        r.put("b", 2.0);
        r.put("a", [1.0, 2.0]);
        r.check(Check::at_most("c", 0.0, 1.0));
        let s = r.to_json();
        assert_eq!(s, r.clone().to_json());
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(r.all_pass());
    }
}
