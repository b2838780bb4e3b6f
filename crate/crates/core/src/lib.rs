//! Knuth-style balanced and nearly-balanced block codes.
//!
//! A data word is made (nearly) balanced by complementing its first `k`
//! bits; a short parity word prefixed to the result tells the decoder which
//! `k` was used. Two schemes are provided:
//!
//! * [`SpCodec`]: simple parallel, balanced parity words.
//! * [`OpCodec`]: optimized parallel, parity words of graded weight, which
//!   usually needs fewer parity bits.
//!
//! Both accept a disparity bound `±2d`; with `d > 0` fewer flip positions
//! are needed and the parity word shrinks accordingly.
//!
//! ```
//! use zsc_core::{BitWord, SpCodec};
//!
//! let codec = SpCodec::new(8, 0).unwrap();
//! let w: BitWord = "00000000".parse().unwrap();
//! let c = codec.encode(w).unwrap();
//! assert_eq!(c.to_string(), "01001111110000");
//! assert_eq!(codec.decode(&c).unwrap(), w);
//! ```

pub mod arch;
pub mod bits;
pub mod codec;
pub mod error;
pub mod op;
pub mod par;
pub mod parity;
pub mod sizing;
pub mod sp;
pub mod stream;
pub mod verify;

pub use arch::{estimate_resources, serial_encode, Architecture, ResourceEstimate};
pub use bits::{BitWord, Codeword, DisparityBound};
pub use codec::{Codec, Scheme};
pub use error::{Error, Result};
pub use op::{build_op_schedule, op_parity_bits, validate_op_schedule, OpCodec, OpSchedule};
pub use parity::{balanced_words, words_of_weight, ParityTable};
pub use sizing::{
    binomial, count_bounded_disparity_words, ideal_zs_bits, parity_reduction_check, table1,
    SizingRow,
};
pub use sp::{select_ks, sp_parity_bits, SpCodec};
pub use stream::{decode_stream, encode_stream, stream_stats, FrameHeader, StreamStats};
pub use verify::{verify, Coverage, VerifyReport};
