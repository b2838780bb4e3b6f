//! The ZSC1 container: a 19-byte header followed by codewords packed
//! MSB-first with no per-word alignment, zero-padded to a byte boundary at
//! the end.
//!
//! ```text
//! offset size field
//!  0     4    magic "ZSC1" (5A 53 43 31)
//!  4     1    version (01)
//!  5     1    scheme (00 = SP, 01 = OP)
//!  6     2    n, little endian
//!  8     1    d
//!  9     2    p, little endian
//! 11     8    word count, little endian
//! 19          payload
//! ```

use std::collections::BTreeMap;

use crate::bits::{BitWord, Codeword};
use crate::codec::{Codec, Scheme};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"ZSC1";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 19;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameHeader {
    pub scheme: Scheme,
    pub n: u16,
    pub d: u8,
    pub p: u16,
    pub word_count: u64,
}

impl FrameHeader {
    pub fn for_codec(codec: &Codec, word_count: u64) -> Result<Self> {
        let d = u8::try_from(codec.bound().d())
            .map_err(|_| Error::InvalidArgument(format!("d={} does not fit a header byte", codec.bound().d())))?;
        Ok(Self {
            scheme: codec.scheme(),
            n: codec.n() as u16,
            d,
            p: codec.p() as u16,
            word_count,
        })
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5] = self.scheme.code();
        out[6..8].copy_from_slice(&self.n.to_le_bytes());
        out[8] = self.d;
        out[9..11].copy_from_slice(&self.p.to_le_bytes());
        out[11..19].copy_from_slice(&self.word_count.to_le_bytes());
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Format(format!(
                "header needs {HEADER_LEN} bytes, got {}",
                bytes.len()
            )));
        }
        if bytes[0..4] != MAGIC {
            return Err(Error::Format(format!("bad magic {:02x?}", &bytes[0..4])));
        }
        if bytes[4] != VERSION {
            return Err(Error::Format(format!("unsupported version {}", bytes[4])));
        }
        let le16 = |i: usize| u16::from_le_bytes([bytes[i], bytes[i + 1]]);
        let header = Self {
            scheme: Scheme::from_code(bytes[5])?,
            n: le16(6),
            d: bytes[8],
            p: le16(9),
            word_count: u64::from_le_bytes(bytes[11..19].try_into().expect("8 bytes")),
        };
        if !header.n.is_multiple_of(2) || !(2..=64).contains(&header.n) {
            return Err(Error::Format(format!("data width {} is not even in 2..=64", header.n)));
        }
        Ok(header)
    }

    /// Builds the codec this header describes and checks its parity width.
    pub fn codec(&self) -> Result<Codec> {
        let codec = Codec::build(self.scheme, self.n as usize, self.d as u32)?;
        if codec.p() != self.p as usize {
            return Err(Error::Format(format!(
                "header says p={} but {} n={} d={} uses p={}",
                self.p,
                self.scheme,
                self.n,
                self.d,
                codec.p()
            )));
        }
        Ok(codec)
    }

    pub fn codeword_bits(&self) -> usize {
        self.n as usize + self.p as usize
    }

    pub fn payload_len(&self) -> Result<usize> {
        (self.word_count as u128 * self.codeword_bits() as u128)
            .div_ceil(8)
            .try_into()
            .map_err(|_| Error::Format("word count too large".into()))
    }
}

/// MSB-first bit packer.
#[derive(Default)]
pub struct BitWriter {
    out: Vec<u8>,
    acc: u128,
    pending: u32,
}

impl BitWriter {
    pub fn new(out: Vec<u8>) -> Self {
        Self {
            out,
            acc: 0,
            pending: 0,
        }
    }

    pub fn write_word(&mut self, w: BitWord) {
        self.acc = (self.acc << w.len()) | w.value() as u128;
        self.pending += w.len() as u32;
        while self.pending >= 8 {
            self.pending -= 8;
            self.out.push((self.acc >> self.pending) as u8);
        }
        self.acc &= (1u128 << self.pending) - 1;
    }

    pub fn finish(mut self) -> Vec<u8> {
        if self.pending > 0 {
            self.out.push((self.acc << (8 - self.pending)) as u8);
        }
        self.out
    }
}

/// MSB-first bit unpacker.
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.bytes.len() * 8 - self.pos
    }

    pub fn read(&mut self, len: usize) -> Option<u64> {
        if len > 64 || len > self.remaining() {
            return None;
        }
        let mut v = 0u64;
        let mut left = len;
        while left > 0 {
            let byte = self.bytes[self.pos / 8];
            let offset = self.pos % 8;
            let take = left.min(8 - offset);
            let bits = (byte >> (8 - offset - take)) as u64 & ((1 << take) - 1);
            v = (v << take) | bits;
            left -= take;
            self.pos += take;
        }
        Some(v)
    }

    pub fn read_word(&mut self, len: usize) -> Option<BitWord> {
        self.read(len)
            .map(|v| BitWord::new(v, len).expect("read width matches"))
    }
}

/// Splits raw bytes into `n`-bit data words.
pub fn bytes_to_words(input: &[u8], n: usize) -> Result<Vec<BitWord>> {
    let bits = input.len() * 8;
    if !bits.is_multiple_of(n) {
        return Err(Error::PartialWord { bits, n });
    }
    let mut r = BitReader::new(input);
    Ok((0..bits / n)
        .map(|_| r.read_word(n).expect("length checked"))
        .collect())
}

pub fn words_to_bytes(words: &[BitWord]) -> Vec<u8> {
    let mut wtr = BitWriter::new(Vec::with_capacity(words.len() * 8));
    for &w in words {
        wtr.write_word(w);
    }
    wtr.finish()
}

pub fn encode_stream(codec: &Codec, input: &[u8]) -> Result<Vec<u8>> {
    let words = bytes_to_words(input, codec.n())?;
    let codewords = codec.encode_batch(&words)?;
    let header = FrameHeader::for_codec(codec, words.len() as u64)?;
    let mut out = Vec::with_capacity(HEADER_LEN + header.payload_len()?);
    out.extend_from_slice(&header.to_bytes());
    let mut wtr = BitWriter::new(out);
    for cw in &codewords {
        wtr.write_word(cw.parity);
        wtr.write_word(cw.payload);
    }
    Ok(wtr.finish())
}

/// Parses a framed stream into its header, codec and raw codewords.
pub fn read_frame(framed: &[u8]) -> Result<(FrameHeader, Codec, Vec<Codeword>)> {
    let header = FrameHeader::parse(framed)?;
    let codec = header.codec()?;
    let payload = &framed[HEADER_LEN..];
    let expected = header.payload_len()?;
    if payload.len() < expected {
        return Err(Error::Truncated {
            expected,
            actual: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(Error::Format(format!(
            "{} trailing bytes after payload",
            payload.len() - expected
        )));
    }
    let (p, n) = (header.p as usize, header.n as usize);
    let mut r = BitReader::new(payload);
    let codewords: Vec<Codeword> = (0..header.word_count)
        .map(|_| {
            let u = r.read_word(p).expect("length checked");
            let x = r.read_word(n).expect("length checked");
            Codeword::new(u, x)
        })
        .collect();
    if r.read(r.remaining()).is_some_and(|pad| pad != 0) {
        return Err(Error::Format("nonzero padding bits".into()));
    }
    Ok((header, codec, codewords))
}

pub fn decode_stream(framed: &[u8]) -> Result<Vec<u8>> {
    let (header, codec, codewords) = read_frame(framed)?;
    if !(header.word_count as u128 * header.n as u128).is_multiple_of(8) {
        return Err(Error::Format(format!(
            "{} words of {} bits do not fill whole bytes",
            header.word_count, header.n
        )));
    }
    let words = codec.decode_batch(&codewords)?;
    Ok(words_to_bytes(&words))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamStats {
    pub word_count: u64,
    /// Codeword disparity → count, one key per even value in `-2d..=2d`.
    pub histogram: BTreeMap<i32, u64>,
    pub rds_final: i64,
    pub rds_max_abs: u64,
}

impl StreamStats {
    fn empty(d: u32) -> Self {
        let b = 2 * d as i32;
        Self {
            word_count: 0,
            histogram: (-b..=b).step_by(2).map(|v| (v, 0)).collect(),
            rds_final: 0,
            rds_max_abs: 0,
        }
    }
}

/// Per-codeword disparities and running digital sum of a framed stream.
///
/// Recounts every codeword's ones directly from the packed bits and also
/// decodes it, so a corrupt stream fails with the index of the bad word.
pub fn stream_stats(framed: &[u8]) -> Result<StreamStats> {
    let (header, codec, codewords) = read_frame(framed)?;
    let bound = codec.bound();
    let mut stats = StreamStats::empty(bound.d());
    let mut rds = 0i64;
    for (i, cw) in codewords.iter().enumerate() {
        let v = cw.disparity();
        if !bound.admits(v) {
            return Err(Error::BoundViolation {
                disparity: v,
                bound: bound.bound(),
            }
            .at(i as u64));
        }
        codec.decode(cw).map_err(|e| e.at(i as u64))?;
        *stats.histogram.entry(v).or_default() += 1;
        rds += v as i64;
        stats.rds_max_abs = stats.rds_max_abs.max(rds.unsigned_abs());
    }
    stats.word_count = header.word_count;
    stats.rds_final = rds;
    Ok(stats)
}
