//! CSV emission: header, data rows, trailing `#` metadata.

use std::fmt::Write as _;

/// Formats a double with 17 significant digits.
pub fn float(v: f64) -> String {
    // print -0.0 as 0.0
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

#[derive(Debug, Clone)]
pub struct CsvReport {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    metadata: Vec<(String, String)>,
}

impl CsvReport {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        CsvReport {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.metadata.push((key.to_string(), value.into()));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out.push_str(&self.render_metadata());
        out
    }

    pub fn render_metadata(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}: {v}").expect("writing to a String");
        }
        out
    }
}
