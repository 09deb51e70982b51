//! Training data: categorical tables, mined antecedents and the
//! equivalent-points minority mask.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use hashbrown::HashMap;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::lambda::Lambda;
use crate::AntecedentId;

/// One `attribute = value` test, possibly negated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub column: String,
    pub value: String,
    pub negated: bool,
}

impl Clause {
    /// `age=18-20`, `priors>3`, `NOT location=transit authority`.
    pub fn name(&self) -> String {
        let test = if self.value.starts_with(['>', '<']) {
            format!("{}{}", self.column, self.value)
        } else {
            format!("{}={}", self.column, self.value)
        };
        if self.negated {
            format!("NOT {test}")
        } else {
            test
        }
    }
}

const AND: &str = " AND ";

#[derive(Debug, Clone, PartialEq)]
pub struct Antecedent {
    pub id: AntecedentId,
    pub name: String,
    pub captures: BitVec,
    pub clause_count: u8,
    pub negated: bool,
    /// Present when the antecedent was mined from a table, so it can be
    /// re-evaluated on other rows. Antecedents read from rule files only
    /// carry their captures.
    pub clauses: Option<Vec<Clause>>,
}

impl Antecedent {
    pub fn support(&self) -> usize {
        self.captures.count_ones()
    }

    /// The clause names making up this antecedent, recovered from the name
    /// when the structured clauses are not available.
    pub fn clause_names(&self) -> BTreeSet<String> {
        match &self.clauses {
            Some(cs) => cs.iter().map(Clause::name).collect(),
            None => self.name.split(AND).map(|c| c.trim().to_string()).collect(),
        }
    }
}

/// Antecedents with dense ids `0..M` over a common sample count.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AntecedentSet {
    items: Vec<Antecedent>,
    n_samples: usize,
}

impl AntecedentSet {
    /// Builds a set from named capture vectors; ids follow iteration order.
    pub fn from_named<I>(n_samples: usize, named: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, BitVec)>,
    {
        let mut items = Vec::new();
        for (name, captures) in named {
            if captures.len() != n_samples {
                return Err(Error::LengthMismatch {
                    expected: n_samples,
                    found: captures.len(),
                });
            }
            let id = AntecedentId::try_from(items.len()).map_err(|_| {
                Error::InvalidArgument(format!("more than {} antecedents", AntecedentId::MAX))
            })?;
            let clause_count = name.matches(AND).count() as u8 + 1;
            let negated = name.starts_with("NOT ");
            items.push(Antecedent {
                id,
                name,
                captures,
                clause_count,
                negated,
                clauses: None,
            });
        }
        Ok(AntecedentSet { items, n_samples })
    }

    fn from_clauses(n_samples: usize, mined: Vec<(Vec<Clause>, BitVec)>) -> Result<Self> {
        if mined.len() > AntecedentId::MAX as usize {
            return Err(Error::InvalidArgument(format!(
                "more than {} antecedents",
                AntecedentId::MAX
            )));
        }
        let items = mined
            .into_iter()
            .enumerate()
            .map(|(i, (clauses, captures))| Antecedent {
                id: i as AntecedentId,
                name: clauses.iter().map(Clause::name).collect::<Vec<_>>().join(AND),
                captures,
                clause_count: clauses.len() as u8,
                negated: clauses.iter().any(|c| c.negated),
                clauses: Some(clauses),
            })
            .collect();
        Ok(AntecedentSet { items, n_samples })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn get(&self, id: AntecedentId) -> &Antecedent {
        &self.items[id as usize]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Antecedent> {
        self.items.iter()
    }

    pub fn find(&self, name: &str) -> Option<&Antecedent> {
        self.items.iter().find(|a| a.name == name)
    }

    /// Re-evaluates mined antecedents on another table with the same columns,
    /// e.g. a held-out fold. Ids and names are preserved.
    pub fn apply_to(&self, table: &CategoricalTable) -> Result<AntecedentSet> {
        let mut mined = Vec::with_capacity(self.items.len());
        for a in &self.items {
            let clauses = a.clauses.clone().ok_or_else(|| {
                Error::InvalidArgument(format!("antecedent `{}` has no clause structure", a.name))
            })?;
            let mut captures = BitVec::ones(table.n_rows());
            for c in &clauses {
                captures.and_assign(&table.clause_captures(c)?);
            }
            mined.push((clauses, captures));
        }
        AntecedentSet::from_clauses(table.n_rows(), mined)
    }
}

/// A categorical attribute. `values` is sorted; `codes[row]` indexes it.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub values: Vec<String>,
    pub codes: Vec<u32>,
}

impl Column {
    pub fn value_of(&self, row: usize) -> &str {
        &self.values[self.codes[row] as usize]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategoricalTable {
    pub columns: Vec<Column>,
    pub labels: Vec<bool>,
    pub label_column: String,
}

/// Maps a label cell to a class; `None` if the cell is not a recognised
/// binary label.
pub fn parse_label(cell: &str) -> Option<bool> {
    match cell.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" => Some(true),
        "0" | "false" | "no" => Some(false),
        _ => None,
    }
}

impl CategoricalTable {
    /// Builds a table from string records. Records with any empty cell are
    /// dropped; the second return value counts them.
    pub fn from_records<I>(header: &[String], records: I, label_column: &str) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = Vec<String>>,
    {
        let label_idx = header
            .iter()
            .position(|h| h == label_column)
            .ok_or_else(|| Error::UnknownColumn(label_column.to_string()))?;
        let mut raw_columns: Vec<Vec<String>> = vec![Vec::new(); header.len()];
        let mut labels = Vec::new();
        let mut dropped = 0;
        for (row, rec) in records.into_iter().enumerate() {
            if rec.len() != header.len() {
                return Err(Error::RaggedRow {
                    row: row + 1,
                    expected: header.len(),
                    found: rec.len(),
                });
            }
            if rec.iter().any(|c| c.trim().is_empty()) {
                dropped += 1;
                continue;
            }
            let label = parse_label(&rec[label_idx]).ok_or_else(|| Error::NonBinaryLabel {
                column: label_column.to_string(),
                value: rec[label_idx].clone(),
            })?;
            labels.push(label);
            for (col, cell) in raw_columns.iter_mut().zip(rec) {
                col.push(cell.trim().to_string());
            }
        }
        let columns = header
            .iter()
            .zip(raw_columns)
            .enumerate()
            .filter(|(i, _)| *i != label_idx)
            .map(|(_, (name, cells))| encode_column(name.clone(), cells))
            .collect();
        Ok((
            CategoricalTable {
                columns,
                labels,
                label_column: label_column.to_string(),
            },
            dropped,
        ))
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn column(&self, name: &str) -> Result<&Column> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))
    }

    pub fn label_bits(&self) -> BitVec {
        BitVec::from_bools(self.labels.iter().copied())
    }

    /// Rows at `indices`, in order; repeats allowed. Value dictionaries are
    /// kept, so codes stay comparable across selections.
    pub fn select_rows(&self, indices: &[usize]) -> CategoricalTable {
        CategoricalTable {
            columns: self
                .columns
                .iter()
                .map(|c| Column {
                    name: c.name.clone(),
                    values: c.values.clone(),
                    codes: indices.iter().map(|&i| c.codes[i]).collect(),
                })
                .collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            label_column: self.label_column.clone(),
        }
    }

    pub fn clause_captures(&self, clause: &Clause) -> Result<BitVec> {
        let col = self.column(&clause.column)?;
        let code = col.values.iter().position(|v| *v == clause.value);
        Ok(BitVec::from_bools(col.codes.iter().map(|&c| {
            let hit = Some(c as usize) == code;
            hit != clause.negated
        })))
    }
}

fn encode_column(name: String, cells: Vec<String>) -> Column {
    let values: Vec<String> = cells
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let codes = cells
        .iter()
        .map(|c| values.binary_search(c).expect("value present") as u32)
        .collect();
    Column {
        name,
        values,
        codes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Negations {
    #[default]
    None,
    All,
    /// Negate the single-clause antecedents of these columns only.
    Columns(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiningConfig {
    /// 1 or 2.
    pub max_clauses: u8,
    pub negations: Negations,
    /// Smallest regularization parameter the antecedents will be used with.
    pub lambda_min: Lambda,
}

impl Default for MiningConfig {
    fn default() -> Self {
        MiningConfig {
            max_clauses: 1,
            negations: Negations::None,
            lambda_min: Lambda::ZERO,
        }
    }
}

/// Enumerates single-clause antecedents, the requested negations, and (for
/// `max_clauses == 2`) conjunctions of values from two distinct attributes,
/// then drops those whose support lies outside `[lambda_min, 1 - lambda_min]`.
pub fn mine_antecedents(table: &CategoricalTable, config: &MiningConfig) -> Result<AntecedentSet> {
    if !(1..=2).contains(&config.max_clauses) {
        return Err(Error::InvalidArgument(format!(
            "max_clauses must be 1 or 2, got {}",
            config.max_clauses
        )));
    }
    if config.lambda_min.numer() * 2 >= config.lambda_min.denom() {
        return Err(Error::InvalidArgument(format!(
            "lambda_min must be below 0.5, got {}",
            config.lambda_min
        )));
    }
    if let Negations::Columns(cols) = &config.negations {
        for c in cols {
            table.column(c)?;
        }
    }
    let n = table.n_rows();

    let mut singles: Vec<(usize, Clause, BitVec)> = Vec::new();
    for (ci, col) in table.columns.iter().enumerate() {
        for (vi, value) in col.values.iter().enumerate() {
            let captures = BitVec::from_bools(col.codes.iter().map(|&c| c as usize == vi));
            let clause = Clause {
                column: col.name.clone(),
                value: value.clone(),
                negated: false,
            };
            singles.push((ci, clause, captures));
        }
    }

    let mut mined: Vec<(Vec<Clause>, BitVec)> = singles
        .iter()
        .map(|(_, c, v)| (vec![c.clone()], v.clone()))
        .collect();

    for (_, c, v) in &singles {
        let negate = match &config.negations {
            Negations::None => false,
            Negations::All => true,
            Negations::Columns(cols) => cols.contains(&c.column),
        };
        if negate {
            let clause = Clause {
                negated: true,
                ..c.clone()
            };
            mined.push((vec![clause], v.not()));
        }
    }

    if config.max_clauses == 2 {
        for (i, (ci, c1, v1)) in singles.iter().enumerate() {
            for (cj, c2, v2) in &singles[i + 1..] {
                if ci == cj {
                    continue;
                }
                mined.push((vec![c1.clone(), c2.clone()], v1.and(v2)));
            }
        }
    }

    let lambda = config.lambda_min;
    mined.retain(|(_, v)| {
        let s = v.count_ones();
        !lambda.exceeds_fraction(s, n) && !lambda.below_complement(s, n)
    });
    if mined.is_empty() {
        return Err(Error::EmptyModel);
    }
    AntecedentSet::from_clauses(n, mined)
}

/// Marks, within every group of samples that no antecedent can tell apart,
/// the samples carrying the group's minority label. At an exact tie the
/// label-1 samples are marked.
pub fn compute_minority_mask(antecedents: &AntecedentSet, labels: &BitVec) -> Result<BitVec> {
    let n = labels.len();
    for a in antecedents.iter() {
        if a.captures.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: a.captures.len(),
            });
        }
    }
    let sig_words = antecedents.len().div_ceil(64).max(1);
    let mut signatures = vec![0u64; n * sig_words];
    for (m, a) in antecedents.iter().enumerate() {
        for s in a.captures.iter_ones() {
            signatures[s * sig_words + m / 64] |= 1 << (m % 64);
        }
    }
    let signature = |s: usize| &signatures[s * sig_words..(s + 1) * sig_words];

    // (label-0 count, label-1 count) per signature
    let mut groups: HashMap<&[u64], (usize, usize)> = HashMap::new();
    for s in 0..n {
        let e = groups.entry(signature(s)).or_default();
        if labels.get(s) {
            e.1 += 1;
        } else {
            e.0 += 1;
        }
    }
    let mut mask = BitVec::zeros(n);
    for s in 0..n {
        let (zeros, ones) = groups[signature(s)];
        if zeros == 0 || ones == 0 {
            continue;
        }
        let minority_label = ones <= zeros;
        if labels.get(s) == minority_label {
            mask.set(s, true);
        }
    }
    Ok(mask)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub labels: BitVec,
    pub antecedents: AntecedentSet,
    pub minority_mask: BitVec,
}

impl LabeledDataset {
    /// Computes the minority mask from the antecedents.
    pub fn new(antecedents: AntecedentSet, labels: BitVec) -> Result<Self> {
        let minority_mask = compute_minority_mask(&antecedents, &labels)?;
        Ok(LabeledDataset {
            labels,
            antecedents,
            minority_mask,
        })
    }

    /// Uses a precomputed minority mask (for example one read from a file).
    pub fn with_minority_mask(antecedents: AntecedentSet, labels: BitVec, minority_mask: BitVec) -> Result<Self> {
        for len in [antecedents.n_samples(), minority_mask.len()] {
            if len != labels.len() {
                return Err(Error::LengthMismatch {
                    expected: labels.len(),
                    found: len,
                });
            }
        }
        Ok(LabeledDataset {
            labels,
            antecedents,
            minority_mask,
        })
    }

    pub fn from_table(table: &CategoricalTable, config: &MiningConfig) -> Result<Self> {
        let antecedents = mine_antecedents(table, config)?;
        LabeledDataset::new(antecedents, table.label_bits())
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fold {
    pub train: CategoricalTable,
    pub test: CategoricalTable,
}

/// Deterministic `k`-fold split. Rows are shuffled once with a seeded
/// ChaCha8 generator and cut into `k` contiguous test blocks. With
/// `resample_minority`, each training set is topped up with minority-class
/// rows drawn with replacement until both classes have equal counts.
pub fn split_folds(table: &CategoricalTable, k: usize, seed: u64, resample_minority: bool) -> Result<Vec<Fold>> {
    let n = table.n_rows();
    if k < 2 {
        return Err(Error::InvalidArgument(format!("fold count must be at least 2, got {k}")));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!("fold count {k} exceeds row count {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut folds = Vec::with_capacity(k);
    for f in 0..k {
        let (lo, hi) = (f * n / k, (f + 1) * n / k);
        let mut test: Vec<usize> = order[lo..hi].to_vec();
        test.sort_unstable();
        let mut train: Vec<usize> = order[..lo].iter().chain(&order[hi..]).copied().collect();
        train.sort_unstable();
        if resample_minority {
            let (pos, neg): (Vec<usize>, Vec<usize>) = train.iter().partition(|&&i| table.labels[i]);
            let deficit = pos.len().abs_diff(neg.len());
            let minority = if pos.len() < neg.len() { pos } else { neg };
            if !minority.is_empty() {
                for _ in 0..deficit {
                    train.push(minority[rng.gen_range(0..minority.len())]);
                }
            }
        }
        folds.push(Fold {
            train: table.select_rows(&train),
            test: table.select_rows(&test),
        });
    }
    Ok(folds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn rows(data: &[&[&str]]) -> Vec<Vec<String>> {
        data.iter().map(|r| r.iter().map(|c| s(c)).collect()).collect()
    }

    #[test]
    fn drops_rows_with_missing_cells() {
        let header = vec![s("a"), s("y")];
        let (t, dropped) =
            CategoricalTable::from_records(&header, rows(&[&["x", "1"], &["", "0"], &["z", "0"]]), "y").unwrap();
        assert_eq!(t.n_rows(), 2);
        assert_eq!(dropped, 1);
        assert_eq!(t.labels, vec![true, false]);
    }

    #[test]
    fn rejects_non_binary_labels() {
        let header = vec![s("a"), s("y")];
        let err = CategoricalTable::from_records(&header, rows(&[&["x", "0"], &["x", "1"], &["x", "2"]]), "y")
            .unwrap_err();
        assert!(matches!(err, Error::NonBinaryLabel { .. }));
        let err = CategoricalTable::from_records(&header, rows(&[&["x", "0"]]), "label").unwrap_err();
        assert_eq!(err, Error::UnknownColumn(s("label")));
    }

    fn binary_table() -> CategoricalTable {
        let header = vec![s("flag"), s("y")];
        let data = rows(&[&["a", "1"], &["b", "0"], &["a", "1"], &["b", "1"]]);
        CategoricalTable::from_records(&header, data, "y").unwrap().0
    }

    #[test]
    fn single_binary_attribute_mines_two_antecedents() {
        let set = mine_antecedents(&binary_table(), &MiningConfig::default()).unwrap();
        let names: Vec<_> = set.iter().map(|a| a.name.clone()).collect();
        assert_eq!(names, vec![s("flag=a"), s("flag=b")]);

        let with_neg = MiningConfig {
            negations: Negations::All,
            ..MiningConfig::default()
        };
        let set = mine_antecedents(&binary_table(), &with_neg).unwrap();
        assert_eq!(set.len(), 4);
        assert_eq!(set.get(2).name, "NOT flag=a");
        assert!(set.get(2).negated);
        assert_eq!(set.get(2).captures, set.get(1).captures);
    }

    #[test]
    fn conjunctions_pair_distinct_attributes_only() {
        let header = vec![s("p"), s("q"), s("y")];
        let data = rows(&[&["a", "u", "1"], &["b", "v", "0"], &["a", "v", "1"], &["c", "u", "0"]]);
        let (t, _) = CategoricalTable::from_records(&header, data, "y").unwrap();
        let cfg = MiningConfig {
            max_clauses: 2,
            ..MiningConfig::default()
        };
        let set = mine_antecedents(&t, &cfg).unwrap();
        // 3 + 2 singles, 3 * 2 pairs; empty pairs survive with lambda_min = 0.
        assert_eq!(set.len(), 11);
        for a in set.iter().filter(|a| a.clause_count == 2) {
            let cs = a.clauses.as_ref().unwrap();
            assert_ne!(cs[0].column, cs[1].column);
        }
        let pq = set.find("p=a AND q=v").unwrap();
        assert_eq!(pq.captures, BitVec::from_bools([false, false, true, false]));
    }

    #[test]
    fn support_filter_bounds_both_sides() {
        let header = vec![s("p"), s("y")];
        let mut data = Vec::new();
        for i in 0..10 {
            let v = if i == 0 { "rare" } else { "common" };
            data.push(vec![s(v), s(if i % 2 == 0 { "1" } else { "0" })]);
        }
        let (t, _) = CategoricalTable::from_records(&header, data, "y").unwrap();
        let cfg = MiningConfig {
            lambda_min: "0.2".parse().unwrap(),
            negations: Negations::All,
            ..MiningConfig::default()
        };
        // rare: support 0.1 < 0.2; common: 0.9 > 0.8; negations likewise.
        assert_eq!(mine_antecedents(&t, &cfg).unwrap_err(), Error::EmptyModel);
        let cfg = MiningConfig {
            lambda_min: "0.1".parse().unwrap(),
            ..cfg
        };
        assert_eq!(mine_antecedents(&t, &cfg).unwrap().len(), 4);
    }

    #[test]
    fn mining_rejects_bad_arguments() {
        let t = binary_table();
        let cfg = MiningConfig {
            max_clauses: 3,
            ..MiningConfig::default()
        };
        assert!(matches!(mine_antecedents(&t, &cfg), Err(Error::InvalidArgument(_))));
        let cfg = MiningConfig {
            lambda_min: "0.5".parse().unwrap(),
            ..MiningConfig::default()
        };
        assert!(matches!(mine_antecedents(&t, &cfg), Err(Error::InvalidArgument(_))));
        let cfg = MiningConfig {
            negations: Negations::Columns(vec![s("nope")]),
            ..MiningConfig::default()
        };
        assert!(matches!(mine_antecedents(&t, &cfg), Err(Error::UnknownColumn(_))));
    }

    fn set_of(n: usize, caps: &[&[bool]]) -> AntecedentSet {
        AntecedentSet::from_named(
            n,
            caps.iter()
                .enumerate()
                .map(|(i, c)| (format!("a{i}"), BitVec::from_bools(c.iter().copied()))),
        )
        .unwrap()
    }

    #[test]
    fn distinct_signatures_have_no_minority() {
        let set = set_of(4, &[&[true, true, false, false], &[true, false, true, false]]);
        let labels = BitVec::from_bools([true, false, true, false]);
        assert_eq!(compute_minority_mask(&set, &labels).unwrap().count_ones(), 0);
    }

    #[test]
    fn shared_signature_marks_minority() {
        // Samples 0 and 1 are indistinguishable and disagree.
        let set = set_of(4, &[&[true, true, false, false], &[false, false, true, false]]);
        let labels = BitVec::from_bools([false, true, true, false]);
        let mask = compute_minority_mask(&set, &labels).unwrap();
        // Exact tie: the label-1 sample is marked.
        assert_eq!(mask, BitVec::from_bools([false, true, false, false]));

        let labels = BitVec::from_bools([false, false, true, true]);
        let set = set_of(4, &[&[true, true, true, false]]);
        // Group {0,1,2}: two 0s and one 1, so sample 2 is the minority.
        let mask = compute_minority_mask(&set, &labels).unwrap();
        assert_eq!(mask, BitVec::from_bools([false, false, true, false]));
    }

    #[test]
    fn minority_mask_checks_lengths() {
        let set = set_of(3, &[&[true, false, true]]);
        assert!(compute_minority_mask(&set, &BitVec::zeros(4)).is_err());
        assert!(AntecedentSet::from_named(3, [(s("x"), BitVec::zeros(2))]).is_err());
    }

    fn table_n(n: usize) -> CategoricalTable {
        let header = vec![s("p"), s("y")];
        let data = (0..n)
            .map(|i| vec![format!("v{}", i % 3), s(if i % 4 == 0 { "1" } else { "0" })])
            .collect::<Vec<_>>();
        CategoricalTable::from_records(&header, data, "y").unwrap().0
    }

    #[test]
    fn folds_partition_rows() {
        let t = table_n(10);
        let folds = split_folds(&t, 5, 7, false).unwrap();
        assert_eq!(folds.len(), 5);
        for f in &folds {
            assert_eq!(f.test.n_rows(), 2);
            assert_eq!(f.train.n_rows(), 8);
        }
        assert!(split_folds(&t, 11, 7, false).is_err());
        assert!(split_folds(&t, 1, 7, false).is_err());
    }

    #[test]
    fn folds_are_deterministic_and_resampled() {
        let t = table_n(40);
        let a = split_folds(&t, 4, 99, true).unwrap();
        let b = split_folds(&t, 4, 99, true).unwrap();
        assert_eq!(a, b);
        for f in &a {
            let pos = f.train.labels.iter().filter(|l| **l).count();
            assert_eq!(pos * 2, f.train.n_rows());
            assert_eq!(f.test.n_rows(), 10);
        }
        assert_ne!(a, split_folds(&t, 4, 100, true).unwrap());
    }

    #[test]
    fn apply_to_reproduces_captures() {
        let t = table_n(12);
        let cfg = MiningConfig {
            negations: Negations::All,
            ..MiningConfig::default()
        };
        let set = mine_antecedents(&t, &cfg).unwrap();
        assert_eq!(set.apply_to(&t).unwrap(), set);
        let sub = t.select_rows(&[0, 5, 7]);
        let applied = set.apply_to(&sub).unwrap();
        assert_eq!(applied.get(1).captures, set.get(1).captures.select(&[0, 5, 7]));
    }
}
