//! Exhaustive and sampled codec verification.
//!
//! Every checked word must encode, land within the disparity bound, and
//! decode back to itself. For SP codecs the chosen flip count must also be
//! the smallest qualifying one, and the serial encoder must agree.

use std::fmt;

use crate::arch::serial_encode;
use crate::bits::BitWord;
use crate::codec::Codec;
use crate::error::{Error, Result};
use crate::par::{self, Sampler};

/// Widest data word `Coverage::Exhaustive` accepts.
pub const MAX_EXHAUSTIVE_BITS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    /// Seeded random words plus the adversarial fixtures.
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureKind {
    Encode(Error),
    Decode(Error),
    Roundtrip(BitWord),
    Bound(i32),
    NotMinimal { chosen: usize, earlier: usize },
    SerialMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub word: BitWord,
    pub kind: FailureKind,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.word)?;
        match &self.kind {
            FailureKind::Encode(e) => write!(f, "encode failed: {e}"),
            FailureKind::Decode(e) => write!(f, "decode failed: {e}"),
            FailureKind::Roundtrip(got) => write!(f, "decoded to {got}"),
            FailureKind::Bound(v) => write!(f, "codeword disparity {v} out of bound"),
            FailureKind::NotMinimal { chosen, earlier } => {
                write!(f, "chose k={chosen} but k={earlier} already qualifies")
            }
            FailureKind::SerialMismatch => write!(f, "serial encoder disagrees"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: u64,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn passed(&self) -> u64 {
        self.checked - self.failures.len() as u64
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.is_ok() { "ok" } else { "FAILED" };
        write!(f, "{}/{} {status}", self.passed(), self.checked)
    }
}

/// Runs every check on one word.
pub fn check_word(codec: &Codec, w: BitWord) -> Option<FailureKind> {
    let cw = match codec.encode(w) {
        Ok(cw) => cw,
        Err(e) => return Some(FailureKind::Encode(e)),
    };
    let v = cw.disparity();
    if !codec.bound().admits(v) {
        return Some(FailureKind::Bound(v));
    }
    match codec.decode(&cw) {
        Ok(back) if back == w => {}
        Ok(back) => return Some(FailureKind::Roundtrip(back)),
        Err(e) => return Some(FailureKind::Decode(e)),
    }
    if let Codec::Sp(sp) = codec {
        let chosen = sp.table().lookup_k(cw.parity).ok()?;
        // disparity walk is computed bit by bit, not by popcount
        let walk = w.disparity_walk();
        if let Some(&earlier) = sp
            .selected_ks()
            .iter()
            .take_while(|&&k| k < chosen)
            .find(|&&k| sp.bound().admits(walk[k]))
        {
            return Some(FailureKind::NotMinimal { chosen, earlier });
        }
        if serial_encode(sp, w).ok() != Some(cw) {
            return Some(FailureKind::SerialMismatch);
        }
    }
    None
}

pub fn verify(codec: &Codec, coverage: Coverage) -> Result<VerifyReport> {
    let n = codec.n();
    let fail = |w: BitWord| check_word(codec, w).map(|kind| Failure { word: w, kind });
    match coverage {
        Coverage::Exhaustive => {
            if n > MAX_EXHAUSTIVE_BITS {
                return Err(Error::InvalidArgument(format!(
                    "exhaustive verification of {n}-bit words means 2^{n} inputs; \
                     limit is {MAX_EXHAUSTIVE_BITS} bits, use sampling instead"
                )));
            }
            let failures = par::filter_range(0..1u64 << n, |v| {
                fail(BitWord::new(v, n).expect("in range"))
            });
            Ok(VerifyReport {
                checked: 1 << n,
                failures,
            })
        }
        Coverage::Sampled { count, seed } => {
            let mut failures = Sampler::new(n, seed).filter(count, fail);
            let fixtures = par::adversarial(n);
            failures.extend(fixtures.iter().filter_map(|&w| fail(w)));
            Ok(VerifyReport {
                checked: count + fixtures.len() as u64,
                failures,
            })
        }
    }
}
