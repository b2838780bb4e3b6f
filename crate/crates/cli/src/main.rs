use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use zsc_core::par::Sampler;
use zsc_core::sizing::{RenderTable, TableFormat, TABLE_WIDTHS};
use zsc_core::stream::FrameHeader;
use zsc_core::verify::{Coverage, MAX_EXHAUSTIVE_BITS};
use zsc_core::{
    decode_stream, encode_stream, estimate_resources, stream_stats, table1, verify,
    Architecture, Codec, OpSchedule, Scheme, SpCodec,
};

#[derive(Parser)]
#[command(name = "zsc", version, about = "Balanced and nearly-balanced block codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum parity bits per width and disparity bound.
    Tables {
        /// Data widths to tabulate (defaults to the standard 15).
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Encode raw bytes into a ZSC1 stream.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Decode a ZSC1 stream back to raw bytes.
    Decode {
        #[command(flatten)]
        code: OptionalCodeArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Check encode, bound and decode for every or for sampled data words.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, conflicts_with_all = ["samples", "seed"])]
        exhaustive: bool,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the SP parity table as "k parity" lines.
    DumpTable {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_disparity)]
        disparity: u32,
    },
    /// Print the OP walk schedule.
    DumpSchedule {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_disparity)]
        disparity: u32,
    },
    /// Structural resource proxies for an encoder architecture.
    Resources {
        #[arg(long)]
        arch: Architecture,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Disparity histogram and running digital sum of a ZSC1 stream.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Encode throughput on random words.
    Bench {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 1_000_000)]
        words: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long)]
    scheme: Scheme,
    #[arg(long)]
    n: usize,
    /// Codeword disparity bound: 0, 2 or 4.
    #[arg(long, value_parser = parse_disparity)]
    disparity: u32,
}

#[derive(Args)]
struct OptionalCodeArgs {
    #[arg(long)]
    scheme: Option<Scheme>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = parse_disparity)]
    disparity: Option<u32>,
}

#[derive(Args)]
struct IoArgs {
    /// Input file, standard input if absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file, standard output if absent.
    #[arg(long = "out")]
    output: Option<PathBuf>,
}

/// Returns `d`, half the bound.
fn parse_disparity(s: &str) -> Result<u32, String> {
    let v: u32 = s
        .trim_start_matches('±')
        .parse()
        .map_err(|_| format!("{s:?} is not a disparity bound"))?;
    if !v.is_multiple_of(2) {
        return Err(format!("disparity bound must be even, got {v}"));
    }
    Ok(v / 2)
}

#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

impl CodeArgs {
    fn build(&self) -> Result<Codec> {
        Codec::build(self.scheme, self.n, self.disparity).map_err(|e| usage(e.to_string()))
    }
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>> {
    match path {
        Some(p) => fs::read(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf).context("reading standard input")?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush().context("writing standard output")
        }
    }
}

fn check_header(code: &OptionalCodeArgs, h: &FrameHeader) -> Result<()> {
    let mismatch = |what: &str, flag: String, header: String| {
        usage(format!("--{what} {flag} does not match stream header ({header})"))
    };
    if let Some(s) = code.scheme {
        if s != h.scheme {
            return Err(mismatch("scheme", s.to_string(), h.scheme.to_string()));
        }
    }
    if let Some(n) = code.n {
        if n != h.n as usize {
            return Err(mismatch("n", n.to_string(), h.n.to_string()));
        }
    }
    if let Some(d) = code.disparity {
        if d != h.d as u32 {
            return Err(mismatch("disparity", (2 * d).to_string(), (2 * h.d).to_string()));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Tables { n, format } => {
            let widths = if n.is_empty() { TABLE_WIDTHS.to_vec() } else { n };
            if let Some(bad) = widths.iter().find(|&&w| w < 2 || w % 2 != 0) {
                return Err(usage(format!("widths must be even and at least 2, got {bad}")));
            }
            let fmt = match format {
                Format::Text => TableFormat::Text,
                Format::Csv => TableFormat::Csv,
            };
            write!(out, "{}", RenderTable(&table1(&widths), fmt))?;
        }
        Command::Encode { code, io } => {
            let codec = code.build()?;
            let input = read_input(io.input.as_deref())?;
            let framed = encode_stream(&codec, &input)?;
            write_output(io.output.as_deref(), &framed)?;
        }
        Command::Decode { code, io } => {
            let framed = read_input(io.input.as_deref())?;
            let header = FrameHeader::parse(&framed)?;
            check_header(&code, &header)?;
            let data = decode_stream(&framed)?;
            write_output(io.output.as_deref(), &data)?;
        }
        Command::Verify {
            code,
            exhaustive,
            samples,
            seed,
        } => {
            let coverage = if exhaustive {
                if code.n > MAX_EXHAUSTIVE_BITS {
                    return Err(usage(format!(
                        "--exhaustive over {n}-bit words would check 2^{n} inputs; \
                         the limit is {MAX_EXHAUSTIVE_BITS} bits, use --samples N --seed S",
                        n = code.n
                    )));
                }
                Coverage::Exhaustive
            } else {
                Coverage::Sampled {
                    count: samples,
                    seed,
                }
            };
            let report = verify(&code.build()?, coverage)?;
            writeln!(out, "{report}")?;
            if !report.is_ok() {
                for f in report.failures.iter().take(10) {
                    writeln!(out, "counterexample {f}")?;
                }
                return Ok(ExitCode::from(1));
            }
        }
        Command::DumpTable { n, disparity } => {
            let c = SpCodec::new(n, disparity).map_err(|e| usage(e.to_string()))?;
            write!(out, "{}", c.table())?;
        }
        Command::DumpSchedule { n, disparity } => {
            let s = OpSchedule::build(n, disparity).map_err(|e| usage(e.to_string()))?;
            write!(out, "{}", s.dump())?;
        }
        Command::Resources { arch, code } => {
            let r = estimate_resources(code.n, code.scheme, arch, code.disparity)
                .map_err(|e| usage(e.to_string()))?;
            write!(out, "{r}")?;
        }
        Command::Analyze { input } => {
            let framed = read_input(Some(&input))?;
            let header = FrameHeader::parse(&framed)?;
            let st = stream_stats(&framed)?;
            writeln!(
                out,
                "scheme {} n {} bound ±{} parity {} bits",
                header.scheme,
                header.n,
                2 * header.d,
                header.p
            )?;
            writeln!(out, "codewords: {}", st.word_count)?;
            for (v, c) in &st.histogram {
                writeln!(out, "disparity {v:+}: {c}")?;
            }
            writeln!(out, "rds final: {}", st.rds_final)?;
            writeln!(out, "rds max |.|: {}", st.rds_max_abs)?;
        }
        Command::Bench { code, words, seed } => {
            let codec = code.build()?;
            let data = Sampler::new(code.n, seed).words(words);
            let t = Instant::now();
            let cws = codec.encode_batch(&data)?;
            let enc = t.elapsed();
            let t = Instant::now();
            let back = codec.decode_batch(&cws)?;
            let dec = t.elapsed();
            anyhow::ensure!(back == data, "roundtrip mismatch");
            let rate = |s: f64| words as f64 / s.max(1e-9) / 1e6;
            writeln!(
                out,
                "{} n={} bound ±{}: {words} words",
                code.scheme,
                code.n,
                2 * code.disparity
            )?;
            writeln!(out, "encode {:.3} s ({:.2} Mwords/s)", enc.as_secs_f64(), rate(enc.as_secs_f64()))?;
            writeln!(out, "decode {:.3} s ({:.2} Mwords/s)", dec.as_secs_f64(), rate(dec.as_secs_f64()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("ZS_THREADS").ok().and_then(|v| v.parse().ok()) {
        // only fails if a global pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("zsc: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
