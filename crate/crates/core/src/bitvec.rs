//! Fixed-width bit vectors over the training samples.
//!
//! Bits are packed little-endian into `u64` words. Bits past `len` in the last
//! word are always zero, so popcounts never need masking.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; word_count(len)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVec {
            words: vec![!0; word_count(len)],
            len,
        };
        v.clear_tail();
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        BitVec { words, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            core::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + tz)
                }
            })
        })
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        self.zip_with(other, |a, b| a & b)
    }

    /// `self AND NOT other`.
    pub fn andnot(&self, other: &BitVec) -> BitVec {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn not(&self) -> BitVec {
        let mut v = BitVec {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        v.clear_tail();
        v
    }

    pub fn and_assign(&mut self, other: &BitVec) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn andnot_assign(&mut self, other: &BitVec) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Popcount of `self AND other` without materializing the result.
    pub fn and_count(&self, other: &BitVec) -> usize {
        self.check_len(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Keeps the samples at `indices` (in order, repeats allowed).
    pub fn select(&self, indices: &[usize]) -> BitVec {
        BitVec::from_bools(indices.iter().map(|&i| self.get(i)))
    }

    fn zip_with(&self, other: &BitVec, f: impl Fn(u64, u64) -> u64) -> BitVec {
        self.check_len(other);
        BitVec {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            len: self.len,
        }
    }

    #[inline]
    fn check_len(&self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[")?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ones_clears_tail() {
        let v = BitVec::ones(70);
        assert_eq!(v.count_ones(), 70);
        assert_eq!(v.not().count_ones(), 0);
        assert_eq!(BitVec::ones(64).count_ones(), 64);
        assert_eq!(BitVec::zeros(0).count_ones(), 0);
    }

    #[test]
    fn iter_ones_lists_set_bits() {
        let v = BitVec::from_bools([true, false, false, true, true]);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 3, 4]);
    }

    #[test]
    #[should_panic(expected = "length mismatch")]
    fn mismatched_lengths_panic() {
        BitVec::zeros(3).and(&BitVec::zeros(4));
    }

    fn bools() -> impl Strategy<Value = (Vec<bool>, Vec<bool>)> {
        (0usize..200).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n),
            )
        })
    }

    proptest! {
        #[test]
        fn ops_are_pointwise((a, b) in bools()) {
            let va = BitVec::from_bools(a.iter().copied());
            let vb = BitVec::from_bools(b.iter().copied());
            let and: Vec<bool> = a.iter().zip(&b).map(|(x, y)| *x && *y).collect();
            let andnot: Vec<bool> = a.iter().zip(&b).map(|(x, y)| *x && !*y).collect();
            let or: Vec<bool> = a.iter().zip(&b).map(|(x, y)| *x || *y).collect();
            prop_assert_eq!(va.and(&vb).iter().collect::<Vec<_>>(), and.clone());
            prop_assert_eq!(va.andnot(&vb).iter().collect::<Vec<_>>(), andnot);
            prop_assert_eq!(va.or(&vb).iter().collect::<Vec<_>>(), or);
            prop_assert_eq!(va.and_count(&vb), and.iter().filter(|x| **x).count());
            prop_assert_eq!(va.not().count_ones(), a.len() - va.count_ones());
        }
    }
}
