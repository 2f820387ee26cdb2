//! Column tables and their CSV / JSON renderings.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Empty,
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// A table plus the `key=value` metadata that describes how it was made.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(meta: Vec<(String, String)>, columns: &[&str]) -> Self {
        Table { meta, columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("#");
        for (k, v) in &self.meta {
            write!(out, " {k}={v}").unwrap();
        }
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(*c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let columns: Map<String, Value> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), Value::Array(self.rows.iter().map(|r| json_cell(r[i])).collect())))
            .collect();
        let mut root = Map::new();
        root.insert("meta".into(), Value::Object(meta));
        root.insert("columns".into(), Value::Object(columns));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("tables serialize");
        s.push('\n');
        s
    }
}

/// Shortest round-trip decimal, switching to exponent form outside
/// `[1e-4, 1e15)` so tiny tails stay compact.
fn csv_cell(c: Cell) -> String {
    match c {
        Cell::Int(i) => i.to_string(),
        Cell::Num(v) if v == 0.0 => "0".into(),
        Cell::Num(v) if (1e-4..1e15).contains(&v.abs()) => v.to_string(),
        Cell::Num(v) => format!("{v:e}"),
        Cell::Empty => String::new(),
    }
}

fn json_cell(c: Cell) -> Value {
    match c {
        Cell::Int(i) => Value::from(i),
        Cell::Num(v) => serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number),
        Cell::Empty => Value::Null,
    }
}

/// Where a rendered table goes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sink {
    Stdout,
    File(PathBuf),
}

impl Sink {
    /// Sibling target for a secondary table, `name.<suffix>.<ext>`.
    pub fn sibling(&self, suffix: &str) -> Sink {
        match self {
            Sink::Stdout => Sink::Stdout,
            Sink::File(p) => {
                let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                let name = match p.extension() {
                    Some(ext) => format!("{stem}.{suffix}.{}", ext.to_string_lossy()),
                    None => format!("{stem}.{suffix}"),
                };
                Sink::File(p.with_file_name(name))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Sink::Stdout => "stdout".into(),
            Sink::File(p) => p.display().to_string(),
        }
    }

    pub fn write(&self, text: &str) -> Result<(), CliError> {
        match self {
            Sink::Stdout => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })
            }
            Sink::File(p) => write_file(p, text),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    fs::write(path, text).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec![("command".into(), "x".into()), ("d".into(), "3".into())], &["t", "M", "est"]);
        t.push(vec![Cell::Int(1), Cell::Num(0.25), Cell::Empty]);
        t.push(vec![Cell::Int(2), Cell::Num(1.5e-7), Cell::Num(0.0)]);
        t
    }

    #[test]
    fn csv_layout() {
        assert_eq!(sample().render(Format::Csv), "# command=x d=3\nt,M,est\n1,0.25,\n2,1.5e-7,0\n");
    }

    #[test]
    fn json_mirrors_columns() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["meta"]["d"], "3");
        assert_eq!(v["columns"]["t"], serde_json::json!([1, 2]));
        assert_eq!(v["columns"]["est"], serde_json::json!([null, 0.0]));
        let keys: Vec<_> = v["columns"].as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["t", "M", "est"]);
    }

    #[test]
    fn csv_numbers_round_trip() {
        for v in [1e-300, 0.1, 3.0, 1.0 / 3.0, 2.5e20, -4e-5] {
            assert_eq!(csv_cell(Cell::Num(v)).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn sibling_names() {
        let s = Sink::File(PathBuf::from("out/sweep.csv"));
        assert_eq!(s.sibling("width"), Sink::File(PathBuf::from("out/sweep.width.csv")));
        assert_eq!(Sink::File(PathBuf::from("a")).sibling("width"), Sink::File(PathBuf::from("a.width")));
    }
}
