//! CSV input of series and CSV output of result tables.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use kzp_core::TimeSeries;

use crate::error::{CliError, Result};

/// Round-trip-safe float text: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Read a one-column (value) or two-column (index,value) series.
pub fn read_series(path: &Path, has_header: bool) -> Result<TimeSeries> {
    let mut text = String::new();
    open(path)?
        .read_to_string(&mut text)
        .map_err(|source| io_error(path, source))?;
    parse_series(&text, has_header)
}

pub fn parse_series(text: &str, has_header: bool) -> Result<TimeSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut values = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let field = match record.len() {
            1 => &record[0],
            2 => &record[1],
            k => {
                return Err(CliError::Input(format!(
                    "row {}: expected 1 or 2 columns, found {k}",
                    row + 1
                )))
            }
        };
        let v: f64 = field
            .parse()
            .map_err(|_| CliError::Input(format!("row {}: not a number: {field:?}", row + 1)))?;
        values.push(v);
    }
    Ok(TimeSeries::from_values(values)?)
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| io_error(path, source))
}

pub fn io_error(path: &Path, source: io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Writes a header and rows to `--out` or stdout.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, out: Option<&Path>) -> Result<()> {
        match out {
            Some(path) => {
                let file = File::create(path).map_err(|source| io_error(path, source))?;
                self.write_to(file)
            }
            None => self.write_to(io::stdout().lock()),
        }
    }

    fn write_to<W: Write>(&self, sink: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(sink);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush().map_err(|source| CliError::Io {
            path: "<output>".into(),
            source,
        })?;
        Ok(())
    }
}
