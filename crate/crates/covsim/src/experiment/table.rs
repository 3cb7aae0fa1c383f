//! Rectangular sweep tables and their CSV rendering.
//!
//! The CSV contract: provenance lines prefixed `# `, then one header row,
//! then data rows. Numbers are printed with 9 significant digits, `.`
//! decimal separator and `\n` line endings, so re-running the same
//! configuration reproduces a byte-identical body.

use crate::numfmt::g9;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Provenance lines (config echo, version, summaries) emitted as `#`
    /// comments ahead of the body.
    pub provenance: Vec<String>,
}

impl SweepTable {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            provenance: Vec::new(),
        }
    }

    /// Append a row; panics if it does not match the column count, which
    /// would be a harness bug rather than a user error.
    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width {} does not match {} columns",
            row.len(),
            self.columns.len()
        );
        self.rows.push(row);
    }

    /// Values of a named column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Header plus data rows, no provenance.
    pub fn body(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|&x| g9(x)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Full CSV: provenance comments, then the body.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in &self.provenance {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&self.body());
        out
    }

    /// The body of a rendered CSV: every line not starting with `#`.
    pub fn strip_comments(csv: &str) -> String {
        csv.lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| format!("{l}\n"))
            .collect()
    }
}
