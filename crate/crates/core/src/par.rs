//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) work is spread over the
//! rayon pool; without it the same functions run sequentially. Results are
//! identical either way: samples are generated per fixed-size chunk from a
//! seeded ChaCha stream, and collected outputs are sorted by input index.

use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::bits::BitWord;

/// Sampled words are generated in chunks of this many, one RNG stream each.
pub const SAMPLE_CHUNK: u64 = 4096;

/// Applies `f` to every index in `range`, keeping the `Some` results in
/// index order.
pub fn filter_range<T, F>(range: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().filter_map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.filter_map(f).collect()
    }
}

/// Maps `f` over a slice, preserving order and stopping at the first error.
pub fn try_map<T, U, E, F>(items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(usize, &T) -> Result<U, E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().enumerate().map(|(i, x)| f(i, x)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().enumerate().map(|(i, x)| f(i, x)).collect()
    }
}

/// Sequential twin of [`try_map`], always available for comparison.
pub fn try_map_sequential<T, U, E, F>(items: &[T], f: F) -> Result<Vec<U>, E>
where
    F: Fn(usize, &T) -> Result<U, E>,
{
    items.iter().enumerate().map(|(i, x)| f(i, x)).collect()
}

/// The all-zeros, all-ones, `1010…` and `0101…` words.
pub fn adversarial(n: usize) -> Vec<BitWord> {
    let alt = BitWord::alternating(n).expect("valid width");
    vec![
        BitWord::zeros(n).expect("valid width"),
        BitWord::ones(n).expect("valid width"),
        alt,
        alt.prefix_flip_unchecked(n),
    ]
}

/// Deterministic stream of uniformly random `n`-bit words.
#[derive(Clone, Copy, Debug)]
pub struct Sampler {
    n: usize,
    seed: u64,
}

impl Sampler {
    pub fn new(n: usize, seed: u64) -> Self {
        Self { n, seed }
    }

    fn chunk_rng(&self, chunk: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(chunk);
        rng
    }

    /// Words of one chunk, cut off at `count` words overall.
    fn chunk_words(&self, chunk: u64, count: u64) -> impl Iterator<Item = BitWord> {
        let mut rng = self.chunk_rng(chunk);
        let n = self.n;
        let len = count.saturating_sub(chunk * SAMPLE_CHUNK).min(SAMPLE_CHUNK);
        (0..len).map(move |_| BitWord::from_low_bits(rng.gen::<u64>(), n).expect("valid width"))
    }

    /// First `count` words of the stream.
    pub fn words(&self, count: u64) -> Vec<BitWord> {
        (0..count.div_ceil(SAMPLE_CHUNK))
            .flat_map(|c| self.chunk_words(c, count))
            .collect()
    }

    /// Runs `f` over the first `count` words, keeping `Some` results in
    /// stream order.
    pub fn filter<T, F>(&self, count: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(BitWord) -> Option<T> + Sync + Send,
    {
        let chunks = 0..count.div_ceil(SAMPLE_CHUNK);
        #[cfg(feature = "parallel")]
        {
            chunks
                .into_par_iter()
                .flat_map_iter(|c| self.chunk_words(c, count).filter_map(&f).collect::<Vec<_>>())
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            chunks
                .flat_map(|c| self.chunk_words(c, count).filter_map(&f).collect::<Vec<_>>())
                .collect()
        }
    }
}
