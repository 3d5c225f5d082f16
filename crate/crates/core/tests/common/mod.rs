#![allow(dead_code)]

use std::collections::HashMap;

/// Sections of the frozen high-precision reference table, keyed by header.
pub struct Reference {
    sections: HashMap<String, Vec<(Vec<f64>, f64)>>,
}

impl Reference {
    pub fn load() -> Self {
        let text = include_str!("../data/mpmath_reference.txt");
        let mut sections: HashMap<String, Vec<(Vec<f64>, f64)>> = HashMap::new();
        let mut current = String::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(h) = line.strip_prefix("# ") {
                current = h.to_string();
                continue;
            }
            let (key, value) = line.split_once("=>").expect("row has =>");
            let key = key.trim().trim_start_matches('(').trim_end_matches(')');
            let args = key
                .split(',')
                .map(|s| s.trim().parse::<f64>().expect("numeric key"))
                .collect();
            let value = value.trim().parse::<f64>().expect("numeric value");
            sections
                .entry(current.clone())
                .or_default()
                .push((args, value));
        }
        Reference { sections }
    }

    pub fn section(&self, prefix: &str) -> &[(Vec<f64>, f64)] {
        self.sections
            .iter()
            .find(|(k, _)| k.starts_with(prefix))
            .map(|(_, v)| v.as_slice())
            .unwrap_or_else(|| panic!("no reference section {prefix}"))
    }
}

pub fn close(got: f64, want: f64, rel: f64, abs: f64) -> bool {
    (got - want).abs() <= abs.max(rel * want.abs())
}
