//! CSV and JSON output for survey records and discrepancy reports.
//!
//! CSV: header row, then one row per record in [`ScanRecord::COLUMNS`] order;
//! booleans are `true`/`false` and absent witness fields are empty. JSON: an
//! array of objects with the same field names, one object per line, absent
//! fields as `null`.

use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{DiscrepancyReport, ScanRecord};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}, expected csv or json")),
        }
    }
}

enum Inner<W: Write> {
    Csv(Box<csv::Writer<W>>),
    Json { out: W, first: bool },
}

/// Streaming writer: records are written as they arrive, so memory stays
/// bounded regardless of scan size. Call [`RecordEmitter::finish`] to close
/// the JSON array and flush.
pub struct RecordEmitter<W: Write> {
    inner: Inner<W>,
}

impl<W: Write> RecordEmitter<W> {
    pub fn new(format: Format, out: W) -> Result<Self> {
        let inner = match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .has_headers(false)
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(out);
                // Written by hand so an empty scan still gets a header.
                w.write_record(ScanRecord::COLUMNS)?;
                Inner::Csv(Box::new(w))
            }
            Format::Json => Inner::Json { out, first: true },
        };
        Ok(RecordEmitter { inner })
    }

    pub fn push(&mut self, record: &ScanRecord) -> Result<()> {
        match &mut self.inner {
            Inner::Csv(w) => w.serialize(record)?,
            Inner::Json { out, first } => {
                out.write_all(if *first { b"[\n" } else { b",\n" })?;
                *first = false;
                serde_json::to_writer(&mut *out, record).map_err(json_err)?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<W> {
        match self.inner {
            Inner::Csv(w) => w.into_inner().map_err(|e| Error::Io(e.into_error())),
            Inner::Json { mut out, first } => {
                out.write_all(if first { b"[]\n" } else { b"\n]\n" })?;
                out.flush()?;
                Ok(out)
            }
        }
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Io(e.into())
}

pub fn emit_records<'a, I, W>(records: I, format: Format, out: W) -> Result<W>
where
    I: IntoIterator<Item = &'a ScanRecord>,
    W: Write,
{
    let mut emitter = RecordEmitter::new(format, out)?;
    for r in records {
        emitter.push(r)?;
    }
    emitter.finish()
}

/// CSV carries only the disagreement rows; JSON carries the whole report.
pub fn emit_report<W: Write>(report: &DiscrepancyReport, format: Format, mut out: W) -> Result<W> {
    match format {
        Format::Csv => emit_records(&report.disagreements, Format::Csv, out),
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report).map_err(json_err)?;
            out.write_all(b"\n")?;
            out.flush()?;
            Ok(out)
        }
    }
}
