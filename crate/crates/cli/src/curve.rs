//! Curve files: one header line, comma-separated columns, every value with
//! 17 significant digits, LF line endings.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveParseError {
    #[error("empty input")]
    Empty,
    #[error("header has an empty column name")]
    EmptyColumn,
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {field:?} is not a number")]
    NotANumber { line: usize, field: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Curve {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{v:.16e}").expect("writing to a String");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, CurveParseError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(CurveParseError::Empty)?;
        let columns: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
        if columns.iter().any(String::is_empty) {
            return Err(CurveParseError::EmptyColumn);
        }
        let mut rows = Vec::new();
        for (index, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != columns.len() {
                return Err(CurveParseError::FieldCount {
                    line: index + 1,
                    expected: columns.len(),
                    found: fields.len(),
                });
            }
            let row = fields
                .iter()
                .map(|f| {
                    f.trim().parse::<f64>().map_err(|_| CurveParseError::NotANumber {
                        line: index + 1,
                        field: f.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }
}
