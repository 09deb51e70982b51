//! Recidivism data preparation: six categorical attributes.

use std::io::Write;
use std::path::Path;

use corels_core::CategoricalTable;

use crate::error::{Error, Result};

pub const LABEL_COLUMN: &str = "two_year_recid";

/// Raw columns whose absence drops a record.
pub const REQUIRED: [&str; 10] = [
    "sex",
    "age",
    "juv_fel_count",
    "juv_misd_count",
    "juv_other_count",
    "priors_count",
    "days_b_screening_arrest",
    "c_jail_in",
    "c_jail_out",
    "two_year_recid",
];

pub const COLUMNS: [&str; 6] = [
    "sex",
    "age",
    "juvenile-felonies",
    "juvenile-misdemeanors",
    "juvenile-crimes",
    "priors",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Prepared {
    /// `COLUMNS` followed by the label column.
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub records_read: usize,
    pub dropped: usize,
}

impl Prepared {
    pub fn table(&self) -> Result<CategoricalTable> {
        Ok(CategoricalTable::from_records(&self.header, self.rows.clone(), LABEL_COLUMN)?.0)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(|e| Error::csv(path, e))?;
        w.write_record(&self.header).map_err(|e| Error::csv(path, e))?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| Error::csv(path, e))?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }
}

pub fn age_bucket(age: u32) -> &'static str {
    match age {
        0..=20 => "18-20",
        21..=22 => "21-22",
        23..=25 => "23-25",
        26..=45 => "26-45",
        _ => ">45",
    }
}

pub fn priors_bucket(priors: u32) -> &'static str {
    match priors {
        0 => "0",
        1 => "1",
        2..=3 => "2-3",
        _ => ">3",
    }
}

fn any_bucket(count: u32) -> &'static str {
    if count == 0 {
        "0"
    } else {
        ">0"
    }
}

/// Reads the two-year recidivism CSV, drops records missing any `REQUIRED`
/// field and discretizes the rest.
pub fn prepare(path: &Path) -> Result<Prepared> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| Error::csv(path, e))?;
    let header = rdr.headers().map_err(|e| Error::csv(path, e))?.clone();
    let idx: Vec<usize> = REQUIRED
        .iter()
        .map(|name| {
            header
                .iter()
                .position(|h| h == *name)
                .ok_or_else(|| corels_core::Error::UnknownColumn(name.to_string()).into())
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut records_read = 0;
    let mut dropped = 0;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::csv(path, e))?;
        records_read += 1;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let cells: Vec<&str> = idx.iter().map(|&i| rec.get(i).unwrap_or("").trim()).collect();
        if cells.iter().any(|c| c.is_empty()) {
            dropped += 1;
            continue;
        }
        let int = |i: usize| -> Result<u32> {
            cells[i]
                .parse()
                .map_err(|_| Error::format(path, line, format!("`{}` is not a count: `{}`", REQUIRED[i], cells[i])))
        };
        let (fel, misd, other) = (int(2)?, int(3)?, int(4)?);
        let label = match cells[9] {
            "0" | "1" => cells[9],
            v => return Err(Error::format(path, line, format!("`{LABEL_COLUMN}` is not binary: `{v}`"))),
        };
        rows.push(vec![
            cells[0].to_lowercase(),
            age_bucket(int(1)?).to_string(),
            any_bucket(fel).to_string(),
            any_bucket(misd).to_string(),
            any_bucket(fel + misd + other).to_string(),
            priors_bucket(int(5)?).to_string(),
            label.to_string(),
        ]);
    }
    let header = COLUMNS.iter().chain([&LABEL_COLUMN]).map(|s| s.to_string()).collect();
    Ok(Prepared {
        header,
        rows,
        records_read,
        dropped,
    })
}

/// Writes `prepared` to any writer as CSV.
pub fn write_to<W: Write>(prepared: &Prepared, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&prepared.header)?;
    for r in &prepared.rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}
