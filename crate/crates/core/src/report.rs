//! Command reports: a fixed set of top-level keys shared by all commands,
//! command-specific detail, and a plain-text rendering.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    /// Every stated count matched.
    pub passed: bool,
    pub orbit_count: Option<usize>,
    pub covered_orbits: Option<Vec<String>>,
    pub bad_coset_word: Option<String>,
    pub order_histogram: Option<BTreeMap<u64, usize>>,
    pub survivors: Option<Vec<String>>,
    pub pair: Option<(u32, u32)>,
    pub fixed_point_histogram: Option<BTreeMap<usize, usize>>,
    pub details: serde_json::Value,
    /// Human-readable lines, printed in text mode.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), details: serde_json::Value::Null, ..Default::default() }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn detail<T: Serialize>(&mut self, key: &str, value: &T) {
        if !self.details.is_object() {
            self.details = serde_json::Value::Object(Default::default());
        }
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.details.as_object_mut().expect("object").insert(key.to_string(), v);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(if self.passed { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }
}
