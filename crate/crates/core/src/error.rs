use alloc::string::String;
use alloc::vec::Vec;

use crate::AntecedentId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid regularization parameter: {0}")]
    InvalidLambda(String),

    #[error("label column `{column}` is not binary: saw value `{value}`")]
    NonBinaryLabel { column: String, value: String },

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("row {row} has {found} cells, header has {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("no antecedents survived mining")]
    EmptyModel,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("bit vector length {found} does not match sample count {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("prefix repeats antecedent {0}")]
    DuplicateAntecedent(AntecedentId),

    #[error("trie path {0:?} already exists")]
    DuplicatePath(Vec<AntecedentId>),

    #[error("trie path {0:?} has no parent node")]
    MissingParent(Vec<AntecedentId>),

    #[error("enumeration of {count} prefixes exceeds the budget of {budget}")]
    EnumerationBudget { count: String, budget: u64 },

    #[error("numeric overflow in risk scaling (N = {n}, lambda = {lambda})")]
    Overflow { n: usize, lambda: String },
}
