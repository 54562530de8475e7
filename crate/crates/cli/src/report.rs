//! Plain-text reports with a trailing JSON block.

use num_rational::Ratio;
use qca_core::gnvw::RationalIndex;
use qca_core::tensor::C64;
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    command: String,
    inputs: Vec<(String, String)>,
    results: Vec<(String, String)>,
    json_inputs: Map<String, Value>,
    json_results: Map<String, Value>,
    checks: Vec<Check>,
}

/// `x` with 12 significant digits.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if !(-4..12).contains(&e) {
        format!("{x:.11e}")
    } else {
        format!("{x:.*}", (11 - e).max(0) as usize)
    }
}

/// `re+im i`.
pub fn complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() && z.im != 0.0 { '-' } else { '+' };
    format!("{}{}{} i", sig(z.re), sign, sig(z.im.abs()))
}

pub fn ratio<T: std::fmt::Display>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        let v = value.to_string();
        self.json_inputs.insert(key.into(), Value::String(v.clone()));
        self.inputs.push((key.into(), v));
    }

    pub fn value(&mut self, key: &str, text: String, json: Value) {
        self.results.push((key.into(), text));
        self.json_results.insert(key.into(), json);
    }

    pub fn text(&mut self, key: &str, text: impl ToString) {
        let t = text.to_string();
        self.value(key, t.clone(), Value::String(t));
    }

    pub fn real(&mut self, key: &str, x: f64) {
        self.value(key, sig(x), json!(x));
    }

    pub fn complex(&mut self, key: &str, z: C64) {
        self.value(key, complex(z), json!({ "re": z.re, "im": z.im }));
    }

    pub fn index(&mut self, key: &str, r: &RationalIndex) {
        let exact = r.to_string();
        self.value(
            key,
            format!("{exact} ({})", sig(r.float_value())),
            json!({ "exact": exact, "float": r.float_value() }),
        );
    }

    pub fn rational(&mut self, key: &str, r: &Ratio<u64>) {
        self.text(key, ratio(r));
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl ToString) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.to_string() });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.json_inputs,
            "results": self.json_results,
            "checks": self.checks,
            "passed": self.all_passed(),
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!("qca {}\n", self.command);
        let section = |out: &mut String, title: &str, rows: &[(String, String)]| {
            if rows.is_empty() {
                return;
            }
            out.push_str(title);
            out.push('\n');
            let w = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for (k, v) in rows {
                out.push_str(&format!("  {k:<w$} = {v}\n"));
            }
        };
        section(&mut out, "inputs", &self.inputs);
        section(&mut out, "results", &self.results);
        if !self.checks.is_empty() {
            out.push_str("checks\n");
            for c in &self.checks {
                let tag = if c.passed { "pass" } else { "FAIL" };
                out.push_str(&format!("  [{tag}] {}: {}\n", c.name, c.detail));
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!("summary: {passed}/{} checks passed\n", self.checks.len()));
        out.push_str("--- json\n");
        out.push_str(&serde_json::to_string_pretty(&self.to_json()).expect("report serializes"));
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(2.0), "2.00000000000");
        assert_eq!(sig(-0.5), "-0.500000000000");
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(123.456), "123.456000000");
        assert_eq!(complex(C64::new(-1.0, -0.25)), "-1.00000000000-0.250000000000 i");
    }

    #[test]
    fn failing_check_is_reported() {
        let mut r = Report::new("x");
        r.check("a", true, "ok");
        assert!(r.all_passed());
        r.check("b", false, "off by one");
        assert!(!r.all_passed());
        assert!(r.render().contains("[FAIL] b: off by one"));
        assert!(r.render().contains("summary: 1/2 checks passed"));
    }
}
