//! Simple-parallel balanced coding and its bounded-disparity extension.
//!
//! The encoder flips the first `k` data bits for the smallest selected `k`
//! that brings the word within `±2d`, then prefixes a balanced parity word
//! naming `k`. With `d = 0` every `k` in `0..n` is a candidate; with `d > 0`
//! only one `k` per block of `2d + 1` is kept, which shrinks the parity
//! alphabet.

use crate::bits::{BitWord, Codeword, DisparityBound};
use crate::error::{Error, Result};
use crate::parity::ParityTable;
use crate::sizing::binomial;
use num_bigint::BigUint;

pub(crate) fn check_params(n: usize) -> Result<()> {
    if !(2..=64).contains(&n) || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "data width must be even and within 2..=64, got {n}"
        )));
    }
    Ok(())
}

/// `⌈n / (2d + 1)⌉`, the number of flip counts that must be kept.
pub fn selected_count(n: usize, d: u32) -> usize {
    n.div_ceil(2 * d as usize + 1)
}

/// Block centres `min(j(2d+1) + d, n-1)` for `j = 0..⌈n/(2d+1)⌉`.
///
/// Every `k` in `0..n` lies within `d` of some returned value.
pub fn select_ks(n: usize, d: u32) -> Result<Vec<usize>> {
    check_params(n)?;
    Ok(centres(n, d))
}

// shared with the OP walk selection, where the length is not bounded by 64
pub(crate) fn centres(len: usize, d: u32) -> Vec<usize> {
    let span = 2 * d as usize + 1;
    (0..len.div_ceil(span))
        .map(|j| (j * span + d as usize).min(len - 1))
        .collect()
}

/// Smallest even `p ≥ 2` with `C(p, p/2) ≥ ⌈n/(2d+1)⌉`.
pub fn sp_parity_bits(n: usize, d: u32) -> usize {
    let need = BigUint::from(selected_count(n, d));
    let mut p: u64 = 2;
    while binomial(p, p / 2) < need {
        p += 2;
    }
    p as usize
}

#[derive(Clone, Debug)]
pub struct SpCodec {
    n: usize,
    bound: DisparityBound,
    selected_ks: Vec<usize>,
    table: ParityTable,
}

impl SpCodec {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        let selected_ks = select_ks(n, d)?;
        let p = sp_parity_bits(n, d);
        let table = ParityTable::balanced(p, &selected_ks)?;
        Ok(Self {
            n,
            bound: DisparityBound::new(d),
            selected_ks,
            table,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.table.p()
    }

    pub fn m(&self) -> usize {
        self.n + self.p()
    }

    pub fn bound(&self) -> DisparityBound {
        self.bound
    }

    pub fn selected_ks(&self) -> &[usize] {
        &self.selected_ks
    }

    pub fn table(&self) -> &ParityTable {
        &self.table
    }

    pub(crate) fn check_data(&self, w: BitWord) -> Result<()> {
        if w.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: w.len(),
            });
        }
        Ok(())
    }

    /// Smallest selected `k` whose prefix flip is within the bound.
    pub fn choose_k(&self, w: BitWord) -> Result<usize> {
        self.check_data(w)?;
        self.selected_ks
            .iter()
            .copied()
            .find(|&k| self.bound.admits(w.prefix_flip_unchecked(k).disparity()))
            .ok_or(Error::Unencodable(w))
    }

    pub(crate) fn assemble(&self, w: BitWord, k: usize) -> Codeword {
        let u = self.table.word_for(k).expect("selected k has a parity word");
        Codeword::new(u, w.prefix_flip_unchecked(k))
    }

    pub fn encode(&self, w: BitWord) -> Result<Codeword> {
        let k = self.choose_k(w)?;
        Ok(self.assemble(w, k))
    }

    pub fn decode(&self, c: &Codeword) -> Result<BitWord> {
        if c.parity.len() != self.p() || c.payload.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.m(),
                actual: c.len(),
            });
        }
        let v = c.disparity();
        if !self.bound.admits(v) {
            return Err(Error::BoundViolation {
                disparity: v,
                bound: self.bound.bound(),
            });
        }
        let k = self.table.lookup_k(c.parity)?;
        Ok(c.payload.prefix_flip_unchecked(k))
    }
}
