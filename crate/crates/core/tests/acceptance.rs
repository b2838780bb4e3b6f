//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any failed.
//!
//! Expected values come from the published comparison table, from quoted
//! parity counts, or from oracles written here independently of the
//! library's encode paths.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigUint;
use zsc_core::arch::{estimate_resources, serial_encode, Architecture};
use zsc_core::par::{adversarial, Sampler};
use zsc_core::sizing::{count_bounded_disparity_words, table1, TABLE_WIDTHS};
use zsc_core::stream::{decode_stream, encode_stream, HEADER_LEN};
use zsc_core::{op_parity_bits, sp_parity_bits, BitWord, Codec, Error, Scheme, SpCodec};

/// n, SE, Diff, Ideal ±0/±2/±4, SP ±0/±2/±4, OP ±0/±2/±4.
const TABLE_1: [[usize; 12]; 15] = [
    [4, 4, 8, 6, 6, 4, 8, 6, 6, 8, 6, 6],
    [6, 6, 12, 8, 8, 8, 10, 8, 8, 10, 8, 8],
    [8, 8, 16, 12, 10, 10, 14, 12, 10, 12, 10, 10],
    [10, 10, 20, 14, 12, 12, 16, 14, 12, 14, 12, 12],
    [12, 12, 24, 16, 14, 14, 18, 16, 16, 16, 16, 14],
    [14, 14, 28, 18, 16, 16, 20, 18, 18, 20, 18, 16],
    [16, 16, 32, 20, 18, 18, 22, 20, 20, 22, 20, 18],
    [20, 20, 40, 24, 22, 22, 26, 26, 24, 26, 24, 24],
    [24, 24, 48, 28, 26, 26, 32, 30, 28, 30, 28, 28],
    [28, 28, 56, 32, 30, 30, 36, 34, 32, 34, 32, 32],
    [32, 32, 64, 36, 34, 34, 40, 38, 38, 38, 36, 36],
    [40, 40, 80, 44, 42, 42, 48, 46, 46, 46, 44, 44],
    [48, 48, 96, 52, 50, 50, 56, 54, 54, 54, 54, 52],
    [64, 64, 128, 68, 66, 66, 72, 72, 70, 72, 70, 68],
    [72, 72, 144, 76, 74, 74, 82, 80, 78, 80, 78, 76],
];

const SAMPLES: u64 = 1_000_000;
const SEED: u64 = 0x5A53_4331;

// Oracles: bit-at-a-time, no popcount, no shifts of masks.

fn oracle_bits(v: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| (v >> (n - 1 - i)) & 1 == 1).collect()
}

fn oracle_disparity(bits: &[bool]) -> i32 {
    bits.iter().map(|&b| if b { 1 } else { -1 }).sum()
}

fn oracle_flip_disparity(bits: &[bool], k: usize) -> i32 {
    bits.iter()
        .enumerate()
        .map(|(i, &b)| if (i < k) ^ b { 1 } else { -1 })
        .sum()
}

fn codeword_disparity(c: &zsc_core::Codeword) -> i32 {
    let mut bits = oracle_bits(c.parity.value(), c.parity.len());
    bits.extend(oracle_bits(c.payload.value(), c.payload.len()));
    oracle_disparity(&bits)
}

fn ac1_table() -> Result<String, String> {
    let start = Instant::now();
    let rows = table1(&TABLE_WIDTHS);
    let mut cells = 0;
    for (row, want) in rows.iter().zip(TABLE_1.iter()) {
        let got = row.cells();
        for (c, (g, w)) in got.iter().zip(want.iter()).enumerate() {
            if g != w {
                return Err(format!("n={} column {c}: got {g}, table says {w}", row.n));
            }
            if c > 0 {
                cells += 1;
            }
        }
    }
    if rows.len() != TABLE_1.len() {
        return Err(format!("{} rows", rows.len()));
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 1.0 {
        return Err(format!("took {elapsed:?}, limit 1 s"));
    }
    Ok(format!("{cells} cells match, {elapsed:?}"))
}

fn ac2_parity_spots() -> Result<String, String> {
    let sp: Vec<usize> = (0..3).map(|d| sp_parity_bits(8, d)).collect();
    let op = op_parity_bits(8, 0).p;
    if sp != [6, 4, 2] || op != 4 {
        return Err(format!("sp(8,d)={sp:?}, op(8,0)={op}"));
    }
    Ok("sp(8,0..2) = 6,4,2; op(8,0) = 4".into())
}

fn ac3_exhaustive() -> Result<String, String> {
    let mut words = 0u64;
    for scheme in [Scheme::Sp, Scheme::Op] {
        for n in (2..=16).step_by(2) {
            for d in 0..3u32 {
                let codec = Codec::build(scheme, n, d).map_err(|e| e.to_string())?;
                let sp = SpCodec::new(n, d).map_err(|e| e.to_string())?;
                for v in 0..1u64 << n {
                    let w = BitWord::new(v, n).unwrap();
                    let c = codec.encode(w).map_err(|e| format!("{scheme} n={n} d={d} {w}: {e}"))?;
                    let disp = codeword_disparity(&c);
                    if disp.unsigned_abs() > 2 * d {
                        return Err(format!("{scheme} n={n} d={d} {w}: |v|={disp}"));
                    }
                    let back = codec.decode(&c).map_err(|e| e.to_string())?;
                    if back != w {
                        return Err(format!("{scheme} n={n} d={d} {w} decoded to {back}"));
                    }
                    if scheme == Scheme::Sp {
                        let bits = oracle_bits(v, n);
                        let want = sp
                            .selected_ks()
                            .iter()
                            .copied()
                            .find(|&k| oracle_flip_disparity(&bits, k).unsigned_abs() <= 2 * d)
                            .ok_or(format!("oracle finds no k for {w}"))?;
                        let got = sp.table().lookup_k(c.parity).map_err(|e| e.to_string())?;
                        if got != want {
                            return Err(format!("n={n} d={d} {w}: chose k={got}, minimal is {want}"));
                        }
                    }
                    words += 1;
                }
            }
        }
    }
    Ok(format!("{words} words roundtrip within bound, SP minimal"))
}

fn ac4_sampled() -> Result<String, String> {
    let mut total = 0u64;
    for scheme in [Scheme::Sp, Scheme::Op] {
        for n in [32, 64] {
            for d in 0..3u32 {
                let codec = Codec::build(scheme, n, d).map_err(|e| e.to_string())?;
                let check = |w: BitWord| -> Option<String> {
                    let c = match codec.encode(w) {
                        Ok(c) => c,
                        Err(e) => return Some(format!("{w}: {e}")),
                    };
                    if codeword_disparity(&c).unsigned_abs() > 2 * d {
                        return Some(format!("{w}: out of bound"));
                    }
                    match codec.decode(&c) {
                        Ok(back) if back == w => None,
                        other => Some(format!("{w}: decoded {other:?}")),
                    }
                };
                let mut bad = Sampler::new(n, SEED).filter(SAMPLES, check);
                bad.extend(adversarial(n).into_iter().filter_map(check));
                if let Some(first) = bad.first() {
                    return Err(format!("{scheme} n={n} d={d}: {} failures, first {first}", bad.len()));
                }
                total += SAMPLES + 4;
            }
        }
    }
    Ok(format!("{total} sampled + adversarial words across 12 configurations"))
}

fn ac5_serial() -> Result<String, String> {
    for n in (2..=16).step_by(2) {
        for d in 0..3 {
            let c = SpCodec::new(n, d).unwrap();
            for v in 0..1u64 << n {
                let w = BitWord::new(v, n).unwrap();
                if serial_encode(&c, w).ok() != c.encode(w).ok() {
                    return Err(format!("n={n} d={d} {w}"));
                }
            }
        }
    }
    for d in 0..3 {
        let c = SpCodec::new(64, d).unwrap();
        let bad = Sampler::new(64, SEED ^ d as u64).filter(SAMPLES, |w| {
            (serial_encode(&c, w).ok() != c.encode(w).ok()).then_some(w)
        });
        if let Some(w) = bad.first() {
            return Err(format!("n=64 d={d} {w}"));
        }
    }
    Ok(format!("exhaustive n<=16, {SAMPLES} samples at n=64 for each d"))
}

fn ac6_counts() -> Result<String, String> {
    for m in (2..=20).step_by(2) {
        let mut by_disparity = std::collections::BTreeMap::<i32, u64>::new();
        for v in 0..1u64 << m {
            *by_disparity.entry(oracle_disparity(&oracle_bits(v, m))).or_default() += 1;
        }
        for d in 0..3u32 {
            let brute: u64 = by_disparity
                .iter()
                .filter(|(v, _)| v.unsigned_abs() <= 2 * d)
                .map(|(_, c)| c)
                .sum();
            let got = count_bounded_disparity_words(m as u64, d);
            if got != BigUint::from(brute) {
                return Err(format!("m={m} d={d}: {got} vs brute {brute}"));
            }
        }
    }
    Ok("m = 2..20, d = 0..2 match enumeration".into())
}

fn ac7_resources() -> Result<String, String> {
    let r = estimate_resources(32, Scheme::Sp, Architecture::Parallel, 0).map_err(|e| e.to_string())?;
    if r.balance_calculators != 31 || r.calc_latency_stages != 6 {
        return Err(format!("n=32: {r:?}"));
    }
    let mut ties = Vec::new();
    for n in (6..=64).step_by(2) {
        let calc = |d| {
            estimate_resources(n, Scheme::Sp, Architecture::Parallel, d)
                .unwrap()
                .balance_calculators
        };
        let (c0, c1, c2) = (calc(0), calc(1), calc(2));
        if !(c1 < c0 && c2 < c0 && c2 <= c1) {
            return Err(format!("n={n}: calculators {c0}, {c1}, {c2}"));
        }
        if c2 == c1 {
            ties.push(n);
        }
    }
    Ok(format!(
        "n=32: 31 calculators, latency 6; d>0 strictly below d=0 for n=6..64 (d=1/d=2 tie at n={ties:?})"
    ))
}

fn ac8_stream() -> Result<String, String> {
    let input: Vec<u8> = (0..64u32).map(|i| ((i * 73 + 41) & 0xff) as u8).collect();
    let cases: [(Scheme, &[u8]); 2] = [
        (Scheme::Sp, include_bytes!("fixtures/sp_8_0.zsc")),
        (Scheme::Op, include_bytes!("fixtures/op_8_0.zsc")),
    ];
    let mut flips = 0;
    for (scheme, golden) in cases {
        let codec = Codec::build(scheme, 8, 0).unwrap();
        let framed = encode_stream(&codec, &input).map_err(|e| e.to_string())?;
        if framed != golden {
            return Err(format!("{scheme}: encoded bytes differ from golden fixture"));
        }
        if decode_stream(golden).map_err(|e| e.to_string())? != input {
            return Err(format!("{scheme}: decode does not restore input"));
        }
        let m = codec.m();
        for bit in 0..64 * m {
            let mut bad = golden.to_vec();
            let pos = HEADER_LEN * 8 + bit;
            bad[pos / 8] ^= 0x80 >> (pos % 8);
            match decode_stream(&bad) {
                Err(Error::Codeword { index, .. }) if index == (bit / m) as u64 => flips += 1,
                other => return Err(format!("{scheme}: flip of payload bit {bit} gave {other:?}")),
            }
        }
    }
    Ok(format!("golden SP/OP fixtures match; {flips} single-bit corruptions located"))
}

fn main() {
    let criteria: [(&str, fn() -> Result<String, String>); 8] = [
        ("AC1 table reproduction", ac1_table),
        ("AC2 parity-bit spot values", ac2_parity_spots),
        ("AC3 exhaustive codec correctness", ac3_exhaustive),
        ("AC4 sampled correctness at scale", ac4_sampled),
        ("AC5 serial/parallel equivalence", ac5_serial),
        ("AC6 combinatorial oracle equivalence", ac6_counts),
        ("AC7 resource proxies", ac7_resources),
        ("AC8 stream format stability", ac8_stream),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {name}: {msg} [{secs:.2}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg} [{secs:.2}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
