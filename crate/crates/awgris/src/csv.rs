//! CSV tables. Numbers are written as `{:.16e}` (17 significant digits,
//! round-trips every f64) with LF line endings.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{CliError, Result};

/// Write equally long numeric columns under a header row.
pub fn write_columns(path: &Path, headers: &[&str], columns: &[&[f64]]) -> Result<()> {
    write_table(path, headers, &[], columns)
}

/// Integer columns first (printed as integers), then float columns.
pub fn write_table(path: &Path, headers: &[&str], ints: &[&[usize]], columns: &[&[f64]]) -> Result<()> {
    assert_eq!(headers.len(), ints.len() + columns.len());
    let rows = ints
        .first()
        .map(|c| c.len())
        .or(columns.first().map(|c| c.len()))
        .unwrap_or(0);
    assert!(
        ints.iter().all(|c| c.len() == rows) && columns.iter().all(|c| c.len() == rows),
        "ragged columns"
    );
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    let io = |e| CliError::io(path, e);
    writeln!(w, "{}", headers.join(",")).map_err(io)?;
    let mut line = String::new();
    for r in 0..rows {
        line.clear();
        for c in ints {
            line.push_str(&c[r].to_string());
            line.push(',');
        }
        for c in columns {
            push_num(&mut line, c[r]);
            line.push(',');
        }
        line.pop();
        line.push('\n');
        w.write_all(line.as_bytes()).map_err(io)?;
    }
    w.flush().map_err(io)
}

pub fn format_num(x: f64) -> String {
    let mut s = String::new();
    push_num(&mut s, x);
    s
}

fn push_num(s: &mut String, x: f64) {
    use std::fmt::Write;
    write!(s, "{x:.16e}").unwrap();
}

/// A time series written by [`write_columns`] or any CSV whose first column
/// is time in seconds and last column the value. A header row is optional.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub time: Vec<f64>,
    pub values: Vec<f64>,
}

impl Series {
    /// Sample rate implied by the time column.
    pub fn sample_rate(&self) -> Option<f64> {
        if self.time.len() < 2 {
            return None;
        }
        let span = self.time[self.time.len() - 1] - self.time[0];
        let fs = (self.time.len() - 1) as f64 / span;
        (fs.is_finite() && fs > 0.0).then_some(fs)
    }
}

fn records(path: &Path) -> Result<Vec<(usize, Vec<f64>)>> {
    let mut rdr = ::csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(::csv::Trim::All)
        .flexible(false)
        .from_path(path)
        .map_err(|e| CliError::format(path, 0, e))?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 1;
        let rec = rec.map_err(|e| CliError::format(path, line, e))?;
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(v) => out.push((line, v)),
            Err(_) if i == 0 => {} // header
            Err(e) => return Err(CliError::format(path, line, e)),
        }
    }
    if out.is_empty() {
        return Err(CliError::format(path, 0, "no numeric rows"));
    }
    Ok(out)
}

/// Last column of every row.
pub fn read_column(path: &Path) -> Result<Vec<f64>> {
    Ok(records(path)?
        .into_iter()
        .map(|(_, r)| *r.last().expect("csv rows are non-empty"))
        .collect())
}

/// Two or more columns: time first, value last.
pub fn read_series(path: &Path) -> Result<Series> {
    let rows = records(path)?;
    let mut s = Series {
        time: Vec::with_capacity(rows.len()),
        values: Vec::with_capacity(rows.len()),
    };
    for (line, r) in rows {
        if r.len() < 2 {
            return Err(CliError::format(path, line, "expected time and value columns"));
        }
        s.time.push(r[0]);
        s.values.push(r[r.len() - 1]);
    }
    Ok(s)
}
