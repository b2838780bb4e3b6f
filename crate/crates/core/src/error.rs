use thiserror::Error;

use crate::bits::BitWord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} out of range: {value} (allowed {min}..={max})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("length mismatch: expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("unknown parity word {0}")]
    UnknownParityWord(BitWord),

    #[error("codeword disparity {disparity} exceeds bound ±{bound}")]
    BoundViolation { disparity: i32, bound: u32 },

    #[error("no flip position balances input {0}; parity schedule is defective")]
    Unencodable(BitWord),

    #[error("no transition placement fits the weight capacities for n={n}, d={d}, p={p}")]
    Infeasible { n: usize, d: u32, p: usize },

    #[error("input is {bits} bits, not a multiple of the {n}-bit word size")]
    PartialWord { bits: usize, n: usize },

    #[error("malformed stream: {0}")]
    Format(String),

    #[error("stream truncated: expected {expected} payload bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },

    #[error("codeword {index}: {source}")]
    Codeword {
        index: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at(self, index: u64) -> Error {
        Error::Codeword {
            index,
            source: Box::new(self),
        }
    }
}
