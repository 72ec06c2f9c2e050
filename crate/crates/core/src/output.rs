//! Tabular output in CSV, JSON and Markdown.
//!
//! Full-precision numbers are written with the shortest decimal that
//! round-trips to the same `f64`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Markdown,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Markdown => "md",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "markdown" | "md" => Ok(Self::Markdown),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_full(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Json::Null, Json::Number),
            Cell::Int(v) => Json::from(*v),
            Cell::Text(s) => Json::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Shortest round-trip decimal.
pub fn format_full(v: f64) -> String {
    format!("{v:?}")
}

/// Scientific notation with three significant digits, e.g. `1.77e-2`.
pub fn format_sig3(v: f64) -> String {
    format!("{v:.2e}")
}

/// A subset of columns shown as its own Markdown table.
#[derive(Debug, Clone)]
pub struct View {
    pub title: String,
    pub columns: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Document {
    pub title: String,
    pub meta: Map<String, Json>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Markdown splits into these views when non-empty.
    pub views: Vec<View>,
}

impl Document {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        let mut meta = Map::new();
        meta.insert("version".into(), Json::from(env!("CARGO_PKG_VERSION")));
        Self {
            title: title.into(),
            meta,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            views: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl Into<Json>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
            OutputFormat::Markdown => self.to_markdown(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Json> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::to_json))
                    .collect();
                Json::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("title".into(), Json::from(self.title.as_str()));
        top.insert("meta".into(), Json::Object(self.meta.clone()));
        top.insert("rows".into(), Json::Array(rows));
        let mut s = serde_json::to_string_pretty(&Json::Object(top)).expect("json value");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let default_view;
        let views = if self.views.is_empty() {
            default_view = [View {
                title: self.title.clone(),
                columns: (0..self.columns.len()).collect(),
            }];
            &default_view[..]
        } else {
            &self.views[..]
        };
        let mut out = String::new();
        for (n, view) in views.iter().enumerate() {
            if n > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "### {}\n", view.title);
            let header: Vec<&str> = view.columns.iter().map(|&c| self.columns[c].as_str()).collect();
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for row in &self.rows {
                let cells: Vec<String> = view.columns.iter().map(|&c| row[c].render()).collect();
                let _ = writeln!(out, "| {} |", cells.join(" | "));
            }
        }
        out
    }
}
