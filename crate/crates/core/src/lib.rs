//! Branch-and-bound search for provably optimal rule lists.
//!
//! A rule list is an ordered sequence of `if antecedent then predict label`
//! rules followed by a default prediction. Given a set of pre-mined
//! antecedents (Boolean predicates over categorical features) and binary
//! labels, [`solver::solve`] returns the rule list that minimizes
//!
//! ```text
//! R(d) = misclassification_rate(d) + lambda * length(d)
//! ```
//!
//! together with a certificate that no other rule list does better.
//!
//! This crate is `no_std` (it needs `alloc`). File formats, CSV ingestion and
//! the command line live in the `corels` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bitvec;
pub mod bounds;
pub mod dataset;
pub mod error;
pub mod lambda;
pub mod oracle;
pub mod rulelist;
pub mod search;
pub mod solver;
pub mod symmap;
pub mod trie;

pub use bitvec::BitVec;
pub use dataset::{Antecedent, AntecedentSet, CategoricalTable, LabeledDataset};
pub use error::{Error, Result};
pub use lambda::{Lambda, RiskScale, ScaledRisk};
pub use rulelist::RuleList;
pub use search::SearchPolicy;
pub use solver::{solve, Ablations, SolverConfig, SolverResult, Status};

/// Index of an antecedent within an [`AntecedentSet`].
pub type AntecedentId = u16;
