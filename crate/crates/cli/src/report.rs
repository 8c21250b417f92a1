use anyhow::Result;
use serde::Serialize;

use crate::args::Format;

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Table {
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn markdown(&self) -> String {
        let mut out = format!("| {} |\n", self.headers.join(" | "));
        out.push_str(&format!("|{}\n", "---|".repeat(self.headers.len())));
        for row in &self.rows {
            out.push_str(&format!("| {} |\n", row.join(" | ")));
        }
        out
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

/// A rendered subcommand result. `ok` is false when a check failed.
#[derive(Debug, Clone)]
pub struct Report {
    json: String,
    table: Table,
    pub ok: bool,
}

impl Report {
    pub fn new<T: Serialize>(payload: &T, table: Table, ok: bool) -> Result<Self> {
        Ok(Report {
            json: serde_json::to_string_pretty(payload)?,
            table,
            ok,
        })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => format!("{}\n", self.json),
            Format::Md => self.table.markdown(),
            Format::Csv => self.table.csv()?,
        })
    }
}
