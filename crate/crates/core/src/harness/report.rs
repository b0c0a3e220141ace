//! CSV and JSON scan reports.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ScanRecord;
use crate::error::{KroneckerError, Result};
use crate::numbers::Rational;

pub const CSV_COLUMNS: [&str; 15] = [
    "n1",
    "n2",
    "n3",
    "m",
    "r",
    "rectangular",
    "trivial",
    "lower",
    "e1",
    "upper",
    "alpha_lo",
    "alpha_hi",
    "alpha_exact",
    "sumset",
    "time_ms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

/// `x` with `digits` significant digits, trailing zeros kept off.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let v: f64 = s.parse().expect("formatted float parses");
    format!("{v}")
}

fn opt(r: Option<Rational>) -> String {
    r.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_report<W: Write>(records: &[ScanRecord], format: ReportFormat, writer: W) -> Result<()> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(writer);
            w.write_record(CSV_COLUMNS).map_err(csv_err)?;
            for r in records {
                w.write_record([
                    r.n1.to_string(),
                    r.n2.to_string(),
                    r.n3.to_string(),
                    r.m.to_string(),
                    r.r.to_string(),
                    r.rectangular.to_string(),
                    r.trivial.to_string(),
                    opt(r.lower),
                    opt(r.e1),
                    opt(r.upper),
                    r.alpha_lo.to_string(),
                    r.alpha_hi.to_string(),
                    opt(r.alpha_exact),
                    r.sumset.to_string(),
                    r.time_ms.map(|t| t.to_string()).unwrap_or_default(),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
        ReportFormat::Json => {
            let mut w = BufWriter::new(writer);
            serde_json::to_writer_pretty(&mut w, records).map_err(|e| KroneckerError::Io(e.to_string()))?;
            writeln!(w)?;
            w.flush()?;
        }
    }
    Ok(())
}

pub fn emit_report(records: &[ScanRecord], format: ReportFormat, path: &Path) -> Result<()> {
    write_report(records, format, File::create(path)?)
}

pub fn read_json_report<R: Read>(reader: R) -> Result<Vec<ScanRecord>> {
    serde_json::from_reader(reader).map_err(|e| KroneckerError::Parse(e.to_string()))
}

fn csv_err(e: csv::Error) -> KroneckerError {
    KroneckerError::Io(e.to_string())
}
