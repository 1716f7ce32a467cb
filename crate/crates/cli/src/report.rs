//! Deterministic report rendering. One report = fixed column set, data
//! rows, a summary block, and named pass/fail checks; CSV and JSON carry
//! the same content byte-for-byte reproducibly.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    Float(f64),
    Uint(u64),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Uint(n)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Uint(n as u64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

/// 17 significant digits; non-finite values spelled out.
fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn csv_text(s: &str) -> String {
    // the schemas keep text cells free of structure; flatten the exceptions
    s.replace([',', '\n', '\r'], ";")
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl Cell {
    fn render_csv(&self) -> String {
        match self {
            Cell::Text(s) => csv_text(s),
            Cell::Float(x) => fmt_float(*x),
            Cell::Uint(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn render_json(&self) -> String {
        match self {
            Cell::Text(s) => json_string(s),
            Cell::Float(x) => {
                if x.is_finite() {
                    fmt_float(*x)
                } else {
                    "null".to_string()
                }
            }
            Cell::Uint(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => "null".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
    pub checks: Vec<(&'static str, bool)>,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Report {
            columns,
            rows: Vec::new(),
            summary: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn add_summary(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.push((key, value.into()));
    }

    pub fn add_check(&mut self, name: &'static str, pass: bool) {
        self.checks.push((name, pass));
    }

    pub fn failed_checks(&self) -> usize {
        self.checks.iter().filter(|(_, pass)| !pass).count()
    }

    pub fn render(&self, format: Format, command: &str, seed: u64) -> String {
        match format {
            Format::Csv => self.render_csv(command, seed),
            Format::Json => self.render_json(command, seed),
        }
    }

    fn render_csv(&self, command: &str, seed: u64) -> String {
        let mut out = String::new();
        out.push_str(&format!("# tool zetalab {}\n", env!("CARGO_PKG_VERSION")));
        out.push_str(&format!("# command {}\n", csv_text(command)));
        out.push_str(&format!("# seed {seed}\n"));
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render_csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for (key, value) in &self.summary {
            out.push_str(&format!("# summary {key}={}\n", value.render_csv()));
        }
        for (name, pass) in &self.checks {
            out.push_str(&format!(
                "# check {name} {}\n",
                if *pass { "pass" } else { "fail" }
            ));
        }
        out
    }

    fn render_json(&self, command: &str, seed: u64) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!(
            "  \"tool\": {},\n",
            json_string(&format!("zetalab {}", env!("CARGO_PKG_VERSION")))
        ));
        out.push_str(&format!("  \"command\": {},\n", json_string(command)));
        out.push_str(&format!("  \"seed\": {seed},\n"));
        out.push_str("  \"rows\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            let fields: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(col, cell)| format!("{}: {}", json_string(col), cell.render_json()))
                .collect();
            out.push_str(&format!("    {{{}}}", fields.join(", ")));
            out.push_str(if i + 1 < self.rows.len() { ",\n" } else { "\n" });
        }
        out.push_str("  ],\n");
        out.push_str("  \"summary\": {");
        let entries: Vec<String> = self
            .summary
            .iter()
            .map(|(key, value)| format!("{}: {}", json_string(key), value.render_json()))
            .collect();
        out.push_str(&entries.join(", "));
        out.push_str("},\n");
        out.push_str("  \"checks\": [");
        let entries: Vec<String> = self
            .checks
            .iter()
            .map(|(name, pass)| format!("{{\"name\": {}, \"pass\": {pass}}}", json_string(name)))
            .collect();
        out.push_str(&entries.join(", "));
        out.push_str("]\n");
        out.push_str("}\n");
        out
    }
}

/// Write to the path, or stdout when none is given.
pub fn emit(rendered: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, rendered),
        None => io::stdout().write_all(rendered.as_bytes()),
    }
}
