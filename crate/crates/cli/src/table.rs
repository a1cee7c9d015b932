//! Rectangular numeric tables and their CSV form.
//!
//! Numbers are serialized with 17 significant digits so any binary64 value
//! round-trips exactly; identical inputs therefore produce byte-identical
//! files on any IEEE-754 platform.

use std::fmt;

/// 17-significant-digit serialization, round-trip exact for f64.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TableError {
    ArityMismatch { expected: usize, got: usize },
    MissingColumn(String),
    Malformed(String),
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ArityMismatch { expected, got } => {
                write!(f, "row has {got} fields, header has {expected}")
            }
            Self::MissingColumn(name) => write!(f, "missing column: {name}"),
            Self::Malformed(msg) => write!(f, "malformed CSV: {msg}"),
        }
    }
}

impl std::error::Error for TableError {}

impl CsvTable {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<(), TableError> {
        if row.len() != self.columns.len() {
            return Err(TableError::ArityMismatch {
                expected: self.columns.len(),
                got: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn col_index(&self, name: &str) -> Result<usize, TableError> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| TableError::MissingColumn(name.to_string()))
    }

    pub fn column(&self, name: &str) -> Result<Vec<f64>, TableError> {
        let i = self.col_index(name)?;
        Ok(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for v in row {
                if !first {
                    out.push(',');
                }
                out.push_str(&format_f64(*v));
                first = false;
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, TableError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| TableError::Malformed("empty input".into()))?;
        let columns: Vec<String> = header.split(',').map(|c| c.to_string()).collect();
        let mut table = Self {
            columns,
            rows: Vec::new(),
        };
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|v| {
                    v.parse::<f64>()
                        .map_err(|_| TableError::Malformed(format!("bad number '{v}'")))
                })
                .collect::<Result<Vec<f64>, _>>()?;
            table.push_row(row)?;
        }
        Ok(table)
    }
}
