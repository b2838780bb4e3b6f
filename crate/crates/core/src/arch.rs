//! Structural resource proxies for the parallel and pipelined encoder
//! architectures, and a serial encoder that follows pipeline semantics.
//!
//! The counts here are proxies, not synthesis results. A balance
//! calculator is one popcount-and-compare unit over a flipped data word.
//! The calculator latency model `⌈log2 n⌉ + 1` is a summation-tree depth
//! plus a compare stage; it gives 6 register stages at `n = 32`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::bits::{BitWord, Codeword};
use crate::codec::Scheme;
use crate::error::{Error, Result};
use crate::op::OpSchedule;
use crate::sp::SpCodec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Architecture {
    /// All candidate flips checked at once, a MUX picks the smallest.
    Parallel,
    /// One candidate per registered stage.
    Pipeline,
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Architecture::Parallel => "parallel",
            Architecture::Pipeline => "pipeline",
        })
    }
}

impl FromStr for Architecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "parallel" => Ok(Architecture::Parallel),
            "pipeline" => Ok(Architecture::Pipeline),
            _ => Err(Error::InvalidArgument(format!(
                "unknown architecture {s:?}, expected parallel or pipeline"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceEstimate {
    pub balance_calculators: usize,
    pub calc_latency_stages: usize,
    /// Zero for the parallel architecture.
    pub pipeline_stages: usize,
    pub parity_bits: usize,
    pub codeword_bits: usize,
    /// Zero for the pipeline architecture.
    pub mux_inputs: usize,
}

impl fmt::Display for ResourceEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "balance calculators: {}", self.balance_calculators)?;
        writeln!(f, "calculator latency (stages): {}", self.calc_latency_stages)?;
        writeln!(f, "pipeline stages: {}", self.pipeline_stages)?;
        writeln!(f, "parity bits: {}", self.parity_bits)?;
        writeln!(f, "codeword bits: {}", self.codeword_bits)?;
        writeln!(f, "mux inputs: {}", self.mux_inputs)
    }
}

/// `⌈log2 n⌉ + 1`.
pub fn calc_latency(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize + 1
}

pub fn estimate_resources(
    n: usize,
    scheme: Scheme,
    arch: Architecture,
    d: u32,
) -> Result<ResourceEstimate> {
    // candidate flip counts in check order
    let (candidate_ks, parity_bits) = match scheme {
        Scheme::Sp => {
            let c = SpCodec::new(n, d)?;
            (c.selected_ks().to_vec(), c.p())
        }
        Scheme::Op => {
            let s = OpSchedule::build(n, d)?;
            (s.steps().iter().map(|st| st.k).collect::<Vec<_>>(), s.p())
        }
    };
    // With a zero bound the last candidate is reached only when nothing
    // earlier balanced, and then it must balance: it needs no calculator.
    // OP steps sharing a flip count share one popcount.
    let checked = if d == 0 {
        &candidate_ks[..candidate_ks.len() - 1]
    } else {
        &candidate_ks[..]
    };
    let balance_calculators = checked.iter().collect::<BTreeSet<_>>().len();
    let (pipeline_stages, mux_inputs) = match arch {
        Architecture::Parallel => (0, candidate_ks.len()),
        Architecture::Pipeline => (balance_calculators, 0),
    };
    Ok(ResourceEstimate {
        balance_calculators,
        calc_latency_stages: calc_latency(n),
        pipeline_stages,
        parity_bits,
        codeword_bits: n + parity_bits,
        mux_inputs,
    })
}

/// Simple-parallel encoding in one left-to-right pass.
///
/// Keeps a running disparity and flips one bit per step (±2), testing the
/// bound only at selected flip counts. Produces the same codeword as
/// [`SpCodec::encode`].
pub fn serial_encode(codec: &SpCodec, w: BitWord) -> Result<Codeword> {
    codec.check_data(w)?;
    let bound = codec.bound();
    let mut selected = codec.selected_ks().iter().copied().peekable();
    let mut v = w.disparity();
    for k in 0..codec.n() {
        if selected.next_if_eq(&k).is_some() && bound.admits(v) {
            return Ok(codec.assemble(w, k));
        }
        v += if w.bit(k) { -2 } else { 2 };
    }
    Err(Error::Unencodable(w))
}
