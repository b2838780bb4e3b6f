//! Fixed-length binary words and the quantities the coding schemes are
//! built on: weight, disparity, prefix flips and the disparity walk.
//!
//! Words are MSB-first. Bit index 0 is the most significant ("first") bit,
//! so flipping the first `k` bits complements the `k` high-order bits of
//! the backing integer.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_WORD_BITS: usize = 64;

/// An even-length binary word of 2 to 64 bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    // invariant: bits above `len` are zero
    value: u64,
    len: u8,
}

#[inline]
fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl BitWord {
    pub fn new(value: u64, len: usize) -> Result<Self> {
        check_len(len)?;
        if value & !low_mask(len) != 0 {
            return Err(Error::InvalidArgument(format!(
                "value {value:#x} does not fit in {len} bits"
            )));
        }
        Ok(Self {
            value,
            len: len as u8,
        })
    }

    /// Builds a word from the low `len` bits of `value`, discarding the rest.
    pub fn from_low_bits(value: u64, len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(Self {
            value: value & low_mask(len),
            len: len as u8,
        })
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(0, len)
    }

    pub fn ones(len: usize) -> Result<Self> {
        Self::new(low_mask(len), len)
    }

    /// `1010…` of the given length.
    pub fn alternating(len: usize) -> Result<Self> {
        Self::from_low_bits(0xAAAA_AAAA_AAAA_AAAA >> (64 - len.clamp(2, 64)), len)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn len(self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        false
    }

    /// Bit at MSB-first position `i`.
    pub fn bit(self, i: usize) -> bool {
        assert!(i < self.len(), "bit index {i} out of range for {}-bit word", self.len);
        (self.value >> (self.len() - 1 - i)) & 1 == 1
    }

    /// Number of ones.
    #[inline]
    pub fn weight(self) -> u32 {
        self.value.count_ones()
    }

    /// Ones minus zeros.
    #[inline]
    pub fn disparity(self) -> i32 {
        2 * self.weight() as i32 - self.len() as i32
    }

    #[inline]
    pub fn is_balanced(self) -> bool {
        self.disparity() == 0
    }

    /// The word with its first `k` bits complemented.
    pub fn prefix_flip(self, k: usize) -> Result<Self> {
        if k > self.len() {
            return Err(Error::OutOfRange {
                what: "flip count",
                value: k as i64,
                min: 0,
                max: self.len() as i64,
            });
        }
        Ok(self.prefix_flip_unchecked(k))
    }

    #[inline]
    pub(crate) fn prefix_flip_unchecked(self, k: usize) -> Self {
        let mask = if k == 0 {
            0
        } else {
            low_mask(k) << (self.len() - k)
        };
        Self {
            value: self.value ^ mask,
            len: self.len,
        }
    }

    /// Disparities of every prefix flip, `k = 0..=len`.
    ///
    /// Consecutive entries differ by exactly ±2 and the last entry is the
    /// negation of the first, so a zero is always crossed.
    pub fn disparity_walk(self) -> Vec<i32> {
        let mut v = self.disparity();
        let mut walk = Vec::with_capacity(self.len() + 1);
        walk.push(v);
        for i in 0..self.len() {
            // flipping a one lowers the disparity, flipping a zero raises it
            v += if self.bit(i) { -2 } else { 2 };
            walk.push(v);
        }
        walk
    }
}

fn check_len(len: usize) -> Result<()> {
    if !(2..=MAX_WORD_BITS).contains(&len) || !len.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "word length must be even and within 2..=64, got {len}"
        )));
    }
    Ok(())
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut value = 0u64;
        let mut len = 0usize;
        for c in s.chars() {
            if c == '_' || c == ' ' {
                continue;
            }
            let b = match c {
                '0' => 0,
                '1' => 1,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "unexpected character {c:?} in bit string"
                    )))
                }
            };
            len += 1;
            if len > MAX_WORD_BITS {
                return Err(Error::InvalidArgument("bit string longer than 64".into()));
            }
            value = value << 1 | b;
        }
        Self::new(value, len)
    }
}

/// Maximum allowed codeword disparity, stored as `d` with bound `2d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DisparityBound(u32);

impl DisparityBound {
    pub const BALANCED: Self = Self(0);

    pub fn new(d: u32) -> Self {
        Self(d)
    }

    /// From the ±0 / ±2 / ±4 style bound; must be even.
    pub fn from_bound(bound: u32) -> Result<Self> {
        if !bound.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "disparity bound must be even, got {bound}"
            )));
        }
        Ok(Self(bound / 2))
    }

    #[inline]
    pub fn d(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn bound(self) -> u32 {
        2 * self.0
    }

    #[inline]
    pub fn admits(self, disparity: i32) -> bool {
        disparity.unsigned_abs() <= self.bound()
    }
}

impl fmt::Display for DisparityBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "±{}", self.bound())
    }
}

/// A codeword `u ∥ x`: parity prefix followed by the (flipped) data word.
///
/// Kept as two words because `p + n` may exceed 64 bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Codeword {
    pub parity: BitWord,
    pub payload: BitWord,
}

impl Codeword {
    pub fn new(parity: BitWord, payload: BitWord) -> Self {
        Self { parity, payload }
    }

    pub fn len(&self) -> usize {
        self.parity.len() + self.payload.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> u32 {
        self.parity.weight() + self.payload.weight()
    }

    pub fn disparity(&self) -> i32 {
        self.parity.disparity() + self.payload.disparity()
    }

    /// Splits an MSB-first bit string of length `p + n`.
    pub fn parse(s: &str, p: usize) -> Result<Self> {
        let bits: String = s.chars().filter(|c| *c != '_' && *c != ' ').collect();
        if bits.len() < p {
            return Err(Error::LengthMismatch {
                expected: p,
                actual: bits.len(),
            });
        }
        let (u, x) = bits.split_at(p);
        Ok(Self::new(u.parse()?, x.parse()?))
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.parity, self.payload)
    }
}
