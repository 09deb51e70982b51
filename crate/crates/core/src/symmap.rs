//! Permutation map: keeps the best-bounded ordering of each antecedent set.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};

use crate::error::{Error, Result};
use crate::lambda::ScaledRisk;
use crate::AntecedentId;

/// Sorted copy of `prefix`; errors if an id repeats.
pub fn canonical_key(prefix: &[AntecedentId]) -> Result<Vec<AntecedentId>> {
    let mut key = prefix.to_vec();
    key.sort_unstable();
    if let Some(w) = key.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateAntecedent(w[0]));
    }
    Ok(key)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    InsertNew,
    /// The newcomer beat the stored permutation, which is returned.
    ReplacedWorse(Vec<AntecedentId>),
    Blocked,
}

// `data` holds the sorted key followed by the stored permutation.
#[derive(Debug, Clone)]
struct Entry {
    data: Box<[AntecedentId]>,
    bound: ScaledRisk,
}

impl Entry {
    fn key(&self) -> &[AntecedentId] {
        &self.data[..self.data.len() / 2]
    }

    fn permutation(&self) -> &[AntecedentId] {
        &self.data[self.data.len() / 2..]
    }
}

#[derive(Debug, Clone, Default)]
pub struct SymmetryMap {
    table: HashTable<Entry>,
    hasher: DefaultHashBuilder,
}

impl SymmetryMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// The stored permutation and bound for an antecedent set.
    pub fn get(&self, key: &[AntecedentId]) -> Option<(&[AntecedentId], ScaledRisk)> {
        let h = self.hasher.hash_one(key);
        self.table
            .find(h, |e| e.key() == key)
            .map(|e| (e.permutation(), e.bound))
    }

    pub fn check_and_insert(&mut self, prefix: &[AntecedentId], bound: ScaledRisk) -> Result<Decision> {
        let key = canonical_key(prefix)?;
        Ok(self.check_and_insert_keyed(&key, prefix, bound))
    }

    /// As [`check_and_insert`](Self::check_and_insert) with the canonical
    /// key already computed.
    pub fn check_and_insert_keyed(&mut self, key: &[AntecedentId], prefix: &[AntecedentId], bound: ScaledRisk) -> Decision {
        debug_assert_eq!(key.len(), prefix.len());
        let h = self.hasher.hash_one(key);
        let make = || Entry {
            data: key.iter().chain(prefix).copied().collect(),
            bound,
        };
        match self.table.find_mut(h, |e| e.key() == key) {
            None => {
                let hasher = &self.hasher;
                self.table.insert_unique(h, make(), |e| hasher.hash_one(e.key()));
                Decision::InsertNew
            }
            Some(e) if bound < e.bound => {
                let prior = e.permutation().to_vec();
                *e = make();
                Decision::ReplacedWorse(prior)
            }
            Some(_) => Decision::Blocked,
        }
    }
}
