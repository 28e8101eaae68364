//! Key-value run reports.
//!
//! One `key = value` entry per line, `#` comment lines, LF endings. Keys are
//! unique and kept in insertion order. Values are free text up to the end of
//! the line; floats are written in Rust's shortest round-trip form.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportParseError {
    #[error("line {line}: expected `key = value`")]
    MissingSeparator { line: usize },
    #[error("line {line}: empty key")]
    EmptyKey { line: usize },
    #[error("line {line}: key {key:?} contains whitespace or '='")]
    BadKey { line: usize, key: String },
    #[error("line {line}: duplicate key {key:?}")]
    DuplicateKey { line: usize, key: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    comments: Vec<String>,
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn comment(&mut self, text: impl Into<String>) {
        self.comments.push(text.into());
    }

    /// Appends or replaces an entry.
    pub fn set(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        let key = key.into();
        debug_assert!(valid_key(&key), "bad report key {key:?}");
        let value = value.to_string().replace(['\n', '\r'], " ");
        match self.entries.iter_mut().find(|(k, _)| *k == key) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((key, value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        self.get(key)?.parse().ok()
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn parse(text: &str) -> Result<Self, ReportParseError> {
        let mut report = Report::new();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                report.comments.push(comment.trim_start().to_string());
                continue;
            }
            let (key, value) = trimmed
                .split_once('=')
                .ok_or(ReportParseError::MissingSeparator { line })?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(ReportParseError::EmptyKey { line });
            }
            if !valid_key(key) {
                return Err(ReportParseError::BadKey {
                    line,
                    key: key.to_string(),
                });
            }
            if report.get(key).is_some() {
                return Err(ReportParseError::DuplicateKey {
                    line,
                    key: key.to_string(),
                });
            }
            report.entries.push((key.to_string(), value.to_string()));
        }
        Ok(report)
    }
}

fn valid_key(key: &str) -> bool {
    !key.is_empty() && !key.chars().any(|c| c.is_whitespace() || c == '=' || c == '#')
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        for (k, v) in &self.entries {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}
