//! Mining folds to disk and training from files.

use std::fs;
use std::path::{Path, PathBuf};

use corels_core::dataset::{mine_antecedents, split_folds, MiningConfig};
use corels_core::{AntecedentSet, BitVec, CategoricalTable, LabeledDataset};

use crate::error::{Error, Result};
use crate::formats;
use crate::manifest::Manifest;

#[derive(Debug, Clone, PartialEq)]
pub struct FoldOptions {
    pub folds: usize,
    pub seed: u64,
    pub resample_minority: bool,
}

/// A mined training set and the same antecedents evaluated on held-out rows.
#[derive(Debug, Clone)]
pub struct MinedFold {
    pub train: LabeledDataset,
    /// Empty when there is no test split.
    pub test_antecedents: AntecedentSet,
    pub test_labels: BitVec,
}

/// Splits `table` (unless `folds == 1`) and mines each training part.
pub fn mine_folds(table: &CategoricalTable, mining: &MiningConfig, folds: &FoldOptions) -> Result<Vec<MinedFold>> {
    let parts: Vec<(CategoricalTable, Option<CategoricalTable>)> = if folds.folds == 1 {
        vec![(table.clone(), None)]
    } else {
        split_folds(table, folds.folds, folds.seed, folds.resample_minority)?
            .into_iter()
            .map(|f| (f.train, Some(f.test)))
            .collect()
    };
    parts
        .into_iter()
        .map(|(train, test)| {
            let antecedents = mine_antecedents(&train, mining)?;
            let (test_antecedents, test_labels) = match test {
                Some(t) => (antecedents.apply_to(&t)?, t.label_bits()),
                None => (AntecedentSet::default(), BitVec::zeros(0)),
            };
            Ok(MinedFold {
                train: LabeledDataset::new(antecedents, train.label_bits())?,
                test_antecedents,
                test_labels,
            })
        })
        .collect()
}

/// Paths of one fold's files.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldPaths {
    pub dir: PathBuf,
    pub train_rules: PathBuf,
    pub train_labels: PathBuf,
    pub train_minority: PathBuf,
    pub test_rules: PathBuf,
    pub test_labels: PathBuf,
}

impl FoldPaths {
    pub fn new(dir: PathBuf) -> Self {
        FoldPaths {
            train_rules: dir.join("train.rules"),
            train_labels: dir.join("train.labels"),
            train_minority: dir.join("train.minority"),
            test_rules: dir.join("test.rules"),
            test_labels: dir.join("test.labels"),
            dir,
        }
    }
}

/// Writes each fold to `outdir/fold_<i>/` (or `outdir/` itself for a single
/// fold) plus `outdir/manifest`.
pub fn write_folds(outdir: &Path, folds: &[MinedFold], mut manifest: Manifest) -> Result<Vec<FoldPaths>> {
    fs::create_dir_all(outdir).map_err(|e| Error::io(outdir, e))?;
    let mut out = Vec::new();
    for (i, f) in folds.iter().enumerate() {
        let dir = if folds.len() == 1 {
            outdir.to_path_buf()
        } else {
            outdir.join(format!("fold_{i}"))
        };
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let p = FoldPaths::new(dir);
        formats::write_rule_file(&p.train_rules, &f.train.antecedents)?;
        formats::write_label_file(&p.train_labels, &f.train.labels)?;
        formats::write_minority_file(&p.train_minority, &f.train.minority_mask)?;
        if !f.test_labels.is_empty() {
            formats::write_rule_file(&p.test_rules, &f.test_antecedents)?;
            formats::write_label_file(&p.test_labels, &f.test_labels)?;
        }
        manifest.set(&format!("fold_{i}.antecedents"), f.train.antecedents.len());
        manifest.set(&format!("fold_{i}.train_samples"), f.train.n_samples());
        manifest.set(&format!("fold_{i}.test_samples"), f.test_labels.len());
        out.push(p);
    }
    manifest.write(&outdir.join("manifest"))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use corels_core::dataset::Negations;

    fn table() -> CategoricalTable {
        let header: Vec<String> = ["p", "q", "y"].iter().map(|s| s.to_string()).collect();
        let rows = (0..30)
            .map(|i| vec![format!("p{}", i % 3), format!("q{}", i % 2), ((i % 3 == 0) as u8).to_string()])
            .collect::<Vec<_>>();
        CategoricalTable::from_records(&header, rows, "y").unwrap().0
    }

    #[test]
    fn single_fold_has_no_test_split() {
        let folds = mine_folds(
            &table(),
            &MiningConfig::default(),
            &FoldOptions {
                folds: 1,
                seed: 0,
                resample_minority: false,
            },
        )
        .unwrap();
        assert_eq!(folds.len(), 1);
        assert_eq!(folds[0].train.n_samples(), 30);
        let dir = tempfile::tempdir().unwrap();
        let paths = write_folds(dir.path(), &folds, Manifest::new("mine")).unwrap();
        assert!(paths[0].train_rules.exists());
        assert!(!paths[0].test_rules.exists());
    }

    #[test]
    fn folds_round_trip_through_files() {
        let mining = MiningConfig {
            max_clauses: 2,
            negations: Negations::Columns(vec!["q".into()]),
            ..MiningConfig::default()
        };
        let folds = mine_folds(
            &table(),
            &mining,
            &FoldOptions {
                folds: 3,
                seed: 5,
                resample_minority: true,
            },
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let paths = write_folds(dir.path(), &folds, Manifest::new("mine")).unwrap();
        assert_eq!(paths.len(), 3);
        for (f, p) in folds.iter().zip(&paths) {
            let ds = formats::load_dataset(&p.train_rules, &p.train_labels, Some(&p.train_minority)).unwrap();
            assert_eq!(ds.labels, f.train.labels);
            assert_eq!(ds.minority_mask, f.train.minority_mask);
            let names: Vec<_> = ds.antecedents.iter().map(|a| a.name.clone()).collect();
            let expected: Vec<_> = f.train.antecedents.iter().map(|a| a.name.clone()).collect();
            assert_eq!(names, expected);
            let test = formats::read_rule_file(&p.test_rules).unwrap();
            assert_eq!(test.len(), ds.antecedents.len());
            assert_eq!(test.n_samples(), 10);
        }
        let m = Manifest::read(&dir.path().join("manifest")).unwrap();
        assert_eq!(m.get("subcommand"), Some("mine"));
    }
}
