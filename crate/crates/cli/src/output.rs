//! CSV and JSON encoders. Big numbers are always decimal strings in JSON;
//! CSV has a fixed header and plain ASCII digits.

use std::io::{self, Write};

use clap::ValueEnum;
use genocchi_core::{BernoulliTable, GenocchiValue, VerificationReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BernoulliRow {
    pub index: usize,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BernoulliDoc {
    pub max_index: usize,
    pub values: Vec<BernoulliRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenocchiRow {
    pub n: usize,
    pub a: u64,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenocchiDoc {
    pub a: u64,
    pub n_max: usize,
    pub values: Vec<GenocchiRow>,
}

/// One CSV line per report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub theorem: String,
    pub n_min: usize,
    pub n_max: usize,
    pub a_min: u64,
    pub a_max: u64,
    pub checked: usize,
    pub failed: usize,
    pub elapsed_secs: f64,
}

impl From<&VerificationReport> for ReportRow {
    fn from(r: &VerificationReport) -> Self {
        ReportRow {
            theorem: r.theorem_id.to_string(),
            n_min: r.grid.n_range.0,
            n_max: r.grid.n_range.1,
            a_min: r.grid.a_range.0,
            a_max: r.grid.a_range.1,
            checked: r.checked,
            failed: r.failures.len(),
            elapsed_secs: r.elapsed_secs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub passed: bool,
    pub reports: Vec<VerificationReport>,
}

pub fn bernoulli_doc(table: &BernoulliTable) -> BernoulliDoc {
    BernoulliDoc {
        max_index: table.max_index(),
        values: table
            .values()
            .iter()
            .enumerate()
            .map(|(index, b)| BernoulliRow {
                index,
                num: b.num().to_string(),
                den: b.den().to_string(),
            })
            .collect(),
    }
}

pub fn genocchi_doc(a: u64, values: &[GenocchiValue]) -> GenocchiDoc {
    GenocchiDoc {
        a,
        n_max: values.len().saturating_sub(1),
        values: values
            .iter()
            .map(|g| GenocchiRow {
                n: g.n,
                a: g.a,
                value: g.value.to_string(),
            })
            .collect(),
    }
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush()
}

fn write_json<W: Write, T: Serialize>(mut out: W, doc: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, doc)?;
    writeln!(out)
}

pub fn write_bernoulli<W: Write>(out: W, doc: &BernoulliDoc, format: Format) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(out, &doc.values),
        Format::Json => write_json(out, doc),
    }
}

pub fn write_genocchi<W: Write>(out: W, doc: &GenocchiDoc, format: Format) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(out, &doc.values),
        Format::Json => write_json(out, doc),
    }
}

pub fn write_verify<W: Write>(out: W, doc: &VerifyDoc, format: Format) -> io::Result<()> {
    match format {
        Format::Csv => {
            let rows: Vec<ReportRow> = doc.reports.iter().map(ReportRow::from).collect();
            write_csv(out, &rows)
        }
        Format::Json => write_json(out, doc),
    }
}

/// Parses CSV produced by the writers above.
pub fn read_csv<T: for<'de> Deserialize<'de>>(input: &[u8]) -> csv::Result<Vec<T>> {
    csv::Reader::from_reader(input).deserialize().collect()
}
