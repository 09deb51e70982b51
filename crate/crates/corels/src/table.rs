use std::path::Path;

use corels_core::dataset::parse_label;
use corels_core::CategoricalTable;

use crate::error::{Error, Result};

/// A CSV file loaded as a categorical table.
#[derive(Debug, Clone)]
pub struct LoadedTable {
    pub table: CategoricalTable,
    pub records_read: usize,
    /// Records dropped for having an empty cell.
    pub dropped: usize,
}

/// Reads a headed CSV file. Every column other than `label_column` becomes
/// a categorical attribute; rows with an empty cell are dropped.
pub fn load_categorical_csv(path: &Path, label_column: &str) -> Result<LoadedTable> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| Error::csv(path, e))?;
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| Error::csv(path, e))?
        .iter()
        .map(str::to_string)
        .collect();
    let label_idx = header
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| corels_core::Error::UnknownColumn(label_column.to_string()))?;
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::csv(path, e))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let label = rec.get(label_idx).unwrap_or("");
        if !label.trim().is_empty() && parse_label(label).is_none() {
            return Err(Error::format(
                path,
                line,
                format!("label column `{label_column}` is not binary: saw value `{label}`"),
            ));
        }
        rows.push(rec.iter().map(str::to_string).collect::<Vec<_>>());
    }
    let records_read = rows.len();
    let (table, dropped) = CategoricalTable::from_records(&header, rows, label_column)?;
    Ok(LoadedTable {
        table,
        records_read,
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn drops_incomplete_rows() {
        let f = write("a,b,y\nx,u,1\n,v,0\nz,w,0\n");
        let t = load_categorical_csv(f.path(), "y").unwrap();
        assert_eq!((t.table.n_rows(), t.dropped, t.records_read), (2, 1, 3));
    }

    #[test]
    fn reports_bad_labels_with_line() {
        let f = write("a,y\nx,0\nx,1\nx,2\n");
        match load_categorical_csv(f.path(), "y").unwrap_err() {
            Error::Format { line, .. } => assert_eq!(line, 4),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn reports_ragged_rows_with_line() {
        let f = write("a,y\nx,0\nx,1,3\n");
        match load_categorical_csv(f.path(), "y").unwrap_err() {
            Error::Format { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e}"),
        }
    }
}
