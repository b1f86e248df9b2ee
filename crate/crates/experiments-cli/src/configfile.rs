//! Flat key-value experiment configuration files.
//!
//! One `key = value` pair per line; `#` starts a comment; keys use the
//! same names as the long command-line flags (with `-` or `_`). Values
//! given on the command line override file values.

use std::collections::HashMap;
use std::path::Path;

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: HashMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            values.insert(normalize(k.trim()), v.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(&normalize(key)).map(|s| s.as_str())
    }

    /// Fill `slot` from the file when the command line left it empty.
    pub fn fill<T: std::str::FromStr>(&self, slot: &mut Option<T>, key: &str) -> Result<(), String>
    where
        T::Err: std::fmt::Display,
    {
        if slot.is_none() {
            if let Some(raw) = self.get(key) {
                let v = raw.parse().map_err(|e| format!("config key {key}: {e}"))?;
                *slot = Some(v);
            }
        }
        Ok(())
    }
}

fn normalize(key: &str) -> String {
    key.replace('_', "-").to_ascii_lowercase()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fill_and_override() {
        let cf = ConfigFile::parse("eta = 2.5\nc_delta = 0.7  # comment\n\n# full line comment\n").unwrap();
        assert_eq!(cf.get("eta"), Some("2.5"));
        assert_eq!(cf.get("c-delta"), Some("0.7"));
        let mut eta: Option<f64> = None;
        cf.fill(&mut eta, "eta").unwrap();
        assert_eq!(eta, Some(2.5));
        let mut cli_set: Option<f64> = Some(1.5);
        cf.fill(&mut cli_set, "eta").unwrap();
        assert_eq!(cli_set, Some(1.5)); // command line wins
        assert!(ConfigFile::parse("garbage").is_err());
    }
}
