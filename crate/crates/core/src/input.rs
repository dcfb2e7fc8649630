//! Reading and writing value series in the formats the command line accepts.

use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    /// Consecutive 8-byte little-endian IEEE754 patterns.
    #[default]
    Raw64Le,
    /// One decimal number per line. Blank lines are skipped.
    Text,
    /// A CSV file with a header row; one column is read.
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw64le" => Ok(Format::Raw64Le),
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Format(format!("unknown format {other:?}"))),
        }
    }
}

/// Which CSV column to read: a header name or a zero-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Name(String),
    Index(usize),
}

impl Default for Column {
    fn default() -> Self {
        Column::Index(0)
    }
}

impl From<&str> for Column {
    fn from(s: &str) -> Self {
        match s.parse() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.to_owned()),
        }
    }
}

pub fn parse_raw64le(bytes: &[u8]) -> Result<Vec<u64>> {
    if !bytes.len().is_multiple_of(8) {
        return Err(Error::Format(format!(
            "raw input of {} bytes is not a multiple of 8",
            bytes.len()
        )));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

fn parse_number(field: &str, line: usize) -> Result<u64> {
    let field = field.trim();
    f64::from_str(field)
        .map(f64::to_bits)
        .map_err(|_| Error::Format(format!("line {line}: cannot parse {field:?} as a number")))
}

pub fn parse_text<R: BufRead>(reader: R) -> Result<Vec<u64>> {
    let mut out = vec![];
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Format(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_number(&line, i + 1)?);
    }
    Ok(out)
}

pub fn parse_csv<R: std::io::Read>(reader: R, column: &Column) -> Result<Vec<u64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let idx = match column {
        Column::Index(i) => *i,
        Column::Name(name) => rdr
            .headers()
            .map_err(|e| Error::Format(e.to_string()))?
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Format(format!("no column named {name:?}")))?,
    };
    let mut out = vec![];
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
        let field = rec
            .get(idx)
            .ok_or_else(|| Error::Format(format!("row {}: no column {idx}", i + 2)))?;
        out.push(parse_number(field, i + 2)?);
    }
    Ok(out)
}

pub fn read_values(bytes: &[u8], format: Format, column: &Column) -> Result<Vec<u64>> {
    match format {
        Format::Raw64Le => parse_raw64le(bytes),
        Format::Text => parse_text(bytes),
        Format::Csv => parse_csv(bytes, column),
    }
}

/// Write values back out. Text and CSV use the shortest representation that
/// parses back to the same bits; NaN payloads do not survive text formats.
pub fn write_values<W: Write>(values: &[u64], format: Format, mut out: W) -> std::io::Result<()> {
    match format {
        Format::Raw64Le => {
            for v in values {
                out.write_all(&v.to_le_bytes())?;
            }
        }
        Format::Text | Format::Csv => {
            if format == Format::Csv {
                writeln!(out, "value")?;
            }
            for &v in values {
                writeln!(out, "{:?}", f64::from_bits(v))?;
            }
        }
    }
    out.flush()
}
