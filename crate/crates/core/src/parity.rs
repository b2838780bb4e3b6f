//! Constant-weight parity words and the parity-word ↔ flip-count table.

use std::collections::HashMap;
use std::fmt;

use crate::bits::BitWord;
use crate::error::{Error, Result};

/// All `p`-bit words with exactly `weight` ones, ascending by value.
pub fn words_of_weight(p: usize, weight: usize) -> Vec<BitWord> {
    WeightClass::new(p, weight).collect()
}

/// Lazy ascending enumeration of the `p`-bit words of a given weight.
///
/// Steps with Gosper's hack (next larger integer with the same popcount),
/// so taking a prefix costs nothing for wide words.
#[derive(Clone, Debug)]
pub struct WeightClass {
    p: usize,
    next: Option<u64>,
}

impl WeightClass {
    pub fn new(p: usize, weight: usize) -> Self {
        assert!(weight <= p && p <= 64, "weight class ({p}, {weight})");
        let first = match weight {
            0 => 0,
            64 => u64::MAX,
            w => (1u64 << w) - 1,
        };
        Self {
            p,
            next: Some(first),
        }
    }
}

impl Iterator for WeightClass {
    type Item = BitWord;

    fn next(&mut self) -> Option<BitWord> {
        let v = self.next?;
        let top = if self.p == 64 { u64::MAX } else { (1u64 << self.p) - 1 };
        let c = v & v.wrapping_neg();
        self.next = match v.overflowing_add(c) {
            _ if c == 0 => None,
            (_, true) => None,
            (r, false) => Some((((r ^ v) >> 2) / c) | r).filter(|&n| n <= top),
        };
        Some(BitWord::from_low_bits(v, self.p).expect("valid length"))
    }
}

/// Balanced `p`-bit words, ascending.
pub fn balanced_words(p: usize) -> Result<Vec<BitWord>> {
    if !p.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "balanced words need an even length, got {p}"
        )));
    }
    if !(2..=64).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "parity length must be within 2..=64, got {p}"
        )));
    }
    Ok(words_of_weight(p, p / 2))
}

/// Bijection between flip counts `k` and parity words `u`, sorted by `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct ParityTable {
    p: usize,
    entries: Vec<(usize, BitWord)>,
    index: HashMap<BitWord, usize>,
}

impl ParityTable {
    /// Builds a table from explicit `(k, u)` pairs; rejects duplicates.
    pub fn new(p: usize, entries: Vec<(usize, BitWord)>) -> Result<Self> {
        let mut entries = entries;
        entries.sort_by_key(|&(k, _)| k);
        let mut index = HashMap::with_capacity(entries.len());
        for (i, &(k, u)) in entries.iter().enumerate() {
            if u.len() != p {
                return Err(Error::LengthMismatch {
                    expected: p,
                    actual: u.len(),
                });
            }
            if i > 0 && entries[i - 1].0 == k {
                return Err(Error::InvalidArgument(format!("flip count {k} listed twice")));
            }
            if index.insert(u, k).is_some() {
                return Err(Error::InvalidArgument(format!("parity word {u} listed twice")));
            }
        }
        Ok(Self { p, entries, index })
    }

    /// Canonical balanced table: the `j`-th selected `k` gets the `j`-th
    /// ascending balanced word.
    pub fn balanced(p: usize, ks: &[usize]) -> Result<Self> {
        if !p.is_multiple_of(2) || !(2..=64).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "parity length must be even and within 2..=64, got {p}"
            )));
        }
        let words: Vec<BitWord> = WeightClass::new(p, p / 2).take(ks.len()).collect();
        if words.len() < ks.len() {
            return Err(Error::InvalidArgument(format!(
                "{} balanced {p}-bit words cannot index {} flip counts",
                words.len(),
                ks.len()
            )));
        }
        let mut ks = ks.to_vec();
        ks.sort_unstable();
        Self::new(p, ks.into_iter().zip(words).collect())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, BitWord)] {
        &self.entries
    }

    /// Parity word for flip count `k`, if `k` is in the table.
    pub fn word_for(&self, k: usize) -> Option<BitWord> {
        self.entries
            .binary_search_by_key(&k, |&(k, _)| k)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn lookup_k(&self, u: BitWord) -> Result<usize> {
        if u.len() != self.p {
            return Err(Error::LengthMismatch {
                expected: self.p,
                actual: u.len(),
            });
        }
        self.index
            .get(&u)
            .copied()
            .ok_or(Error::UnknownParityWord(u))
    }
}

impl fmt::Debug for ParityTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParityTable")
            .field("p", &self.p)
            .field("entries", &self.entries)
            .finish()
    }
}

/// `k u` per line.
impl fmt::Display for ParityTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, u) in &self.entries {
            writeln!(f, "{k} {u}")?;
        }
        Ok(())
    }
}
