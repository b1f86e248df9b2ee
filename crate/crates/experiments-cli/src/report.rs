//! CSV report emission with `#`-prefixed provenance headers.
//!
//! Identical experiment parameters and seed produce byte-identical output
//! except for the single timestamp line.

use std::io::Write;
use std::path::Path;

pub struct Report {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: Vec::new(),
            notes: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn columns(&mut self, cols: &[&str]) -> &mut Self {
        self.columns = cols.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<String>) -> &mut Self {
        self.rows.push(cells);
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# nearres {} {}\n", crate::VERSION, self.command));
        out.push_str(&format!("# generated: {}\n", timestamp()));
        let spec: Vec<String> =
            self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("# spec: {}\n", spec.join(" ")));
        for n in &self.notes {
            out.push_str(&format!("# {n}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    /// Write to `path`, or to stdout when `path` is `None`.
    pub fn emit(&self, path: Option<&Path>) -> std::io::Result<()> {
        match path {
            Some(p) => std::fs::write(p, self.render()),
            None => std::io::stdout().write_all(self.render().as_bytes()),
        }
    }
}

fn timestamp() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

pub fn fmt_f(x: f64) -> String {
    format!("{x:.12e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_modulo_timestamp() {
        let make = || {
            let mut r = Report::new("count");
            r.param("eta", 2.0).columns(&["a", "b"]).row(vec!["1".into(), fmt_f(0.25)]);
            r.render()
        };
        let strip = |s: String| -> Vec<String> {
            s.lines().filter(|l| !l.starts_with("# generated:")).map(String::from).collect()
        };
        assert_eq!(strip(make()), strip(make()));
    }
}
