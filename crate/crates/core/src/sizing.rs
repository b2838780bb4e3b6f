//! Bit-count arithmetic: binomials, the ideal zero-sum bound, and the
//! per-scheme totals that make up the coded-bits comparison table.

use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::op::op_parity_bits;
use crate::sp::{selected_count, sp_parity_bits};

/// Data widths of the published comparison table.
pub const TABLE_WIDTHS: [usize; 15] = [4, 6, 8, 10, 12, 14, 16, 20, 24, 28, 32, 40, 48, 64, 72];

/// The three disparity settings tabulated: ±0, ±2, ±4.
pub const TABLE_DS: [u32; 3] = [0, 1, 2];

/// Exact `C(x, y)`; zero when `y > x`.
pub fn binomial(x: u64, y: u64) -> BigUint {
    if y > x {
        return BigUint::zero();
    }
    let y = y.min(x - y);
    let mut acc = BigUint::one();
    for i in 0..y {
        // running product of i+1 consecutive integers divides exactly by (i+1)!
        acc *= x - i;
        acc /= i + 1;
    }
    acc
}

/// Number of `m`-bit words with `|v| ≤ 2d`.
pub fn count_bounded_disparity_words(m: u64, d: u32) -> BigUint {
    let half = m / 2;
    let lo = half.saturating_sub(d as u64);
    let hi = (half + d as u64).min(m);
    (lo..=hi).map(|w| binomial(m, w)).sum()
}

/// Smallest even `m` whose `|v| ≤ 2d` words number at least `2^n`.
pub fn ideal_zs_bits(n: usize, d: u32) -> usize {
    let target = BigUint::one() << n;
    let mut m = 2;
    while count_bounded_disparity_words(m as u64, d) < target {
        m += 2;
    }
    m
}

/// `N_u(0) / N_u(d)`: how much the flip-count set shrinks at bound `±2d`.
pub fn parity_reduction_check(n: usize, d: u32) -> Ratio<u64> {
    Ratio::new(n as u64, selected_count(n, d) as u64)
}

/// Total coded bits for one data width across every scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizingRow {
    pub n: usize,
    pub se: usize,
    pub diff: usize,
    pub ideal: [usize; 3],
    pub sp_total: [usize; 3],
    pub op_total: [usize; 3],
}

impl SizingRow {
    pub fn compute(n: usize) -> Self {
        let ideal = TABLE_DS.map(|d| ideal_zs_bits(n, d));
        let sp_total = TABLE_DS.map(|d| n + sp_parity_bits(n, d));
        let op_total = TABLE_DS.map(|d| n + op_parity_bits(n, d).p);
        Self {
            n,
            se: n,
            diff: 2 * n,
            ideal,
            sp_total,
            op_total,
        }
    }

    /// All twelve cells in column order.
    pub fn cells(&self) -> [usize; 12] {
        let mut out = [0; 12];
        out[0] = self.n;
        out[1] = self.se;
        out[2] = self.diff;
        out[3..6].copy_from_slice(&self.ideal);
        out[6..9].copy_from_slice(&self.sp_total);
        out[9..12].copy_from_slice(&self.op_total);
        out
    }
}

pub fn table1(widths: &[usize]) -> Vec<SizingRow> {
    widths.iter().map(|&n| SizingRow::compute(n)).collect()
}

pub const COLUMN_NAMES: [&str; 12] = [
    "n", "SE", "Diff", "ZS±0", "ZS±2", "ZS±4", "SP±0", "SP±2", "SP±4", "OP±0", "OP±2", "OP±4",
];

const CSV_HEADER: &str = "n,se,diff,ideal_0,ideal_2,ideal_4,sp_0,sp_2,sp_4,op_0,op_2,op_4";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
}

pub struct RenderTable<'a>(pub &'a [SizingRow], pub TableFormat);

impl fmt::Display for RenderTable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.1 {
            TableFormat::Csv => {
                writeln!(f, "{CSV_HEADER}")?;
                for row in self.0 {
                    let cells: Vec<String> = row.cells().iter().map(ToString::to_string).collect();
                    writeln!(f, "{}", cells.join(","))?;
                }
            }
            TableFormat::Text => {
                let header: Vec<String> = COLUMN_NAMES.iter().map(|c| format!("{c:>5}")).collect();
                writeln!(f, "{}", header.join(" "))?;
                for row in self.0 {
                    let cells: Vec<String> = row.cells().iter().map(|c| format!("{c:>5}")).collect();
                    writeln!(f, "{}", cells.join(" "))?;
                }
            }
        }
        Ok(())
    }
}
