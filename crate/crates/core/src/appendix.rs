//! The bundled table of normalized spectral coefficients and a comparison
//! against freshly computed spectra.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::notation::parse_monoid;
use crate::spectral::{format_rational, parse_rational, Spectrum};
use crate::transfer::TransferMatrix;

const GOLDEN_CSV: &str = include_str!("../data/appendix.csv");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub monoid: String,
    pub label: String,
    pub slow: bool,
    pub lambda: u64,
    pub b: String,
    pub normalized: String,
}

/// All rows belonging to one monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenEntry {
    pub monoid: String,
    pub label: String,
    pub slow: bool,
    pub rows: Vec<GoldenRow>,
}

pub fn golden_rows() -> Result<Vec<GoldenRow>> {
    let mut reader = csv::Reader::from_reader(GOLDEN_CSV.as_bytes());
    reader
        .deserialize()
        .map(|r| r.map_err(|e| Error::Parse(format!("golden table: {e}"))))
        .collect()
}

/// Rows grouped by monoid, in file order.
pub fn golden_entries() -> Result<Vec<GoldenEntry>> {
    let mut entries: Vec<GoldenEntry> = Vec::new();
    for row in golden_rows()? {
        match entries.last_mut() {
            Some(e) if e.monoid == row.monoid => e.rows.push(row),
            _ => entries.push(GoldenEntry {
                monoid: row.monoid.clone(),
                label: row.label.clone(),
                slow: row.slow,
                rows: vec![row],
            }),
        }
    }
    Ok(entries)
}

/// First disagreement between a golden entry and a computed spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableMismatch {
    Lambdas { expected: Vec<u64>, got: Vec<u64> },
    B { lambda: u64, expected: String, got: String },
    Normalized { lambda: u64, expected: String, got: String },
}

impl std::fmt::Display for TableMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableMismatch::Lambdas { expected, got } => {
                write!(f, "eigenvalues {got:?}, expected {expected:?}")
            }
            TableMismatch::B { lambda, expected, got } => {
                write!(f, "b at {lambda} is {got}, expected {expected}")
            }
            TableMismatch::Normalized { lambda, expected, got } => {
                write!(f, "normalized coefficient at {lambda} is {got}, expected {expected}")
            }
        }
    }
}

/// Compares exactly. Golden rationals must already be in lowest terms, so
/// the printed forms are compared as well as the values.
pub fn compare(entry: &GoldenEntry, spectrum: &Spectrum) -> Result<Option<TableMismatch>> {
    let expected: Vec<u64> = entry.rows.iter().map(|r| r.lambda).collect();
    if expected != spectrum.lambdas() {
        return Ok(Some(TableMismatch::Lambdas {
            expected,
            got: spectrum.lambdas().to_vec(),
        }));
    }
    for (i, row) in entry.rows.iter().enumerate() {
        let got = &spectrum.b()[i];
        if parse_rational(&row.b)? != *got || format_rational(got) != row.b {
            return Ok(Some(TableMismatch::B {
                lambda: row.lambda,
                expected: row.b.clone(),
                got: format_rational(got),
            }));
        }
        let golden: BigInt = row
            .normalized
            .parse()
            .map_err(|_| Error::Parse(format!("golden normalized value {:?}", row.normalized)))?;
        let got = &spectrum.normalized()[i];
        if golden != *got {
            return Ok(Some(TableMismatch::Normalized {
                lambda: row.lambda,
                expected: row.normalized.clone(),
                got: got.to_string(),
            }));
        }
    }
    Ok(None)
}

/// Builds the monoid named by the entry, computes its spectrum and compares.
pub fn check_entry(entry: &GoldenEntry, limits: &Limits) -> Result<Option<TableMismatch>> {
    let m = parse_monoid(&entry.monoid)?;
    let w = TransferMatrix::build_with_limits(&m, limits)?;
    compare(entry, &Spectrum::compute(&w)?)
}
