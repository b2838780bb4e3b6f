use std::fmt;
use std::str::FromStr;

use crate::bits::{BitWord, Codeword, DisparityBound};
use crate::error::{Error, Result};
use crate::op::OpCodec;
use crate::par;
use crate::sp::SpCodec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Simple parallel: balanced parity words.
    Sp,
    /// Optimized parallel: weight-graded parity words.
    Op,
}

impl Scheme {
    pub fn code(self) -> u8 {
        match self {
            Scheme::Sp => 0,
            Scheme::Op => 1,
        }
    }

    pub fn from_code(code: u8) -> Result<Self> {
        match code {
            0 => Ok(Scheme::Sp),
            1 => Ok(Scheme::Op),
            other => Err(Error::Format(format!("unknown scheme code {other}"))),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Sp => "SP",
            Scheme::Op => "OP",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sp" => Ok(Scheme::Sp),
            "op" => Ok(Scheme::Op),
            _ => Err(Error::InvalidArgument(format!("unknown scheme {s:?}, expected sp or op"))),
        }
    }
}

/// Either codec behind one interface.
#[derive(Clone, Debug)]
pub enum Codec {
    Sp(SpCodec),
    Op(OpCodec),
}

impl Codec {
    pub fn build(scheme: Scheme, n: usize, d: u32) -> Result<Self> {
        Ok(match scheme {
            Scheme::Sp => Codec::Sp(SpCodec::new(n, d)?),
            Scheme::Op => Codec::Op(OpCodec::build(n, d)?),
        })
    }

    pub fn scheme(&self) -> Scheme {
        match self {
            Codec::Sp(_) => Scheme::Sp,
            Codec::Op(_) => Scheme::Op,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Codec::Sp(c) => c.n(),
            Codec::Op(c) => c.n(),
        }
    }

    pub fn p(&self) -> usize {
        match self {
            Codec::Sp(c) => c.p(),
            Codec::Op(c) => c.p(),
        }
    }

    pub fn m(&self) -> usize {
        self.n() + self.p()
    }

    pub fn bound(&self) -> DisparityBound {
        match self {
            Codec::Sp(c) => c.bound(),
            Codec::Op(c) => c.bound(),
        }
    }

    pub fn encode(&self, w: BitWord) -> Result<Codeword> {
        match self {
            Codec::Sp(c) => c.encode(w),
            Codec::Op(c) => c.encode(w),
        }
    }

    pub fn decode(&self, c: &Codeword) -> Result<BitWord> {
        match self {
            Codec::Sp(s) => s.decode(c),
            Codec::Op(o) => o.decode(c),
        }
    }

    /// Encodes a batch, in parallel when the `parallel` feature is enabled.
    /// Errors carry the index of the offending word.
    pub fn encode_batch(&self, words: &[BitWord]) -> Result<Vec<Codeword>> {
        par::try_map(words, |i, &w| self.encode(w).map_err(|e| e.at(i as u64)))
    }

    pub fn encode_batch_sequential(&self, words: &[BitWord]) -> Result<Vec<Codeword>> {
        par::try_map_sequential(words, |i, &w| self.encode(w).map_err(|e| e.at(i as u64)))
    }

    pub fn decode_batch(&self, codewords: &[Codeword]) -> Result<Vec<BitWord>> {
        par::try_map(codewords, |i, c| self.decode(c).map_err(|e| e.at(i as u64)))
    }

    pub fn decode_batch_sequential(&self, codewords: &[Codeword]) -> Result<Vec<BitWord>> {
        par::try_map_sequential(codewords, |i, c| self.decode(c).map_err(|e| e.at(i as u64)))
    }
}

impl From<SpCodec> for Codec {
    fn from(c: SpCodec) -> Self {
        Codec::Sp(c)
    }
}

impl From<OpCodec> for Codec {
    fn from(c: OpCodec) -> Self {
        Codec::Op(c)
    }
}
