//! Text formats, run configuration and fixture generation.

mod config;
mod format;
mod random;

pub use config::{BayartConfig, RunConfig};
pub use format::{
    fmt_real, parse_dirichlet, parse_family, parse_monomial, parse_series, write_dirichlet,
    write_family, write_monomial, SeriesFile, DIRICHLET_HEADER, MONOMIAL_HEADER,
};
pub use random::{admissible_indices, gen_random, CoefficientLaw, RandomSpec};

use crate::error::{Error, Result};

/// CSV output: a `# hardy-csv v1 <command>` comment row, a header row and
/// the records.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_text(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            w.write_record(row).map_err(csv_error)?;
        }
        let body = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        let body = String::from_utf8(body).map_err(|e| Error::Io(e.to_string()))?;
        Ok(format!("# hardy-csv v1 {}\n{body}", self.command))
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}
