use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cadence", version, about = "Detect cadences in texts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Strip one trailing newline from the input.
    #[arg(long, global = true)]
    pub ascii_line: bool,

    /// Run on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input file; standard input when absent or `-`.
    pub path: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every cadence of at least the given order.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        k_min: usize,
        /// Keep one symbol: a single character or `0xHH`.
        #[arg(long, value_parser = parse_symbol)]
        symbol: Option<u8>,
    },
    /// Decide, per symbol, whether a cadence of order exactly 3 exists.
    Detect3 {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Detect3Mode::Exact)]
        mode: Detect3Mode,
        /// Count every 3-cadence instead of stopping at the first (exact mode).
        #[arg(long)]
        count: bool,
        #[arg(long, value_parser = parse_symbol)]
        symbol: Option<u8>,
    },
    /// Find all anchored cadences.
    Anchored {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = AnchoredMode::Sieve)]
        mode: AnchoredMode,
    },
    /// Write a uniform random text to standard output.
    Gen {
        #[arg(long, default_value_t = 0)]
        len: usize,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u16).range(1..=256))]
        alphabet: u16,
    },
    /// Encode nonzero integer weights as a text over {0, 1, 2}.
    #[command(allow_negative_numbers = true)]
    Encode3sum {
        #[arg(required = true, num_args = 1..)]
        weights: Vec<i64>,
        /// Write only the encoded text, for piping into `detect3`.
        #[arg(long)]
        text_only: bool,
    },
    /// Run a scaling probe.
    Bench {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Detect3Mode {
    Thirds,
    Exact,
    Quadratic,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnchoredMode {
    Sieve,
    Brute,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    /// Text lengths, comma separated; `1e5` style is accepted.
    #[arg(long, value_delimiter = ',', value_parser = parse_length, default_value = "1e4,1e5")]
    pub lengths: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    pub alphabet: usize,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Mean symbol comparisons per position of the anchored pass.
    Anchored {
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Mean wall time of 3-cadence detection.
    Detect3 {
        #[command(flatten)]
        probe: ProbeArgs,
        #[arg(long, value_enum, default_value_t = Detect3Mode::Exact)]
        mode: Detect3Mode,
    },
}

pub fn parse_symbol(s: &str) -> Result<u8, String> {
    if let [b] = s.as_bytes() {
        return Ok(*b);
    }
    s.strip_prefix("0x")
        .and_then(|h| u8::from_str_radix(h, 16).ok())
        .ok_or_else(|| format!("`{s}` is neither one byte nor 0xHH"))
}

pub fn parse_length(s: &str) -> Result<usize, String> {
    if let Ok(n) = s.parse::<usize>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v <= (1u64 << 53) as f64 => Ok(v as usize),
        _ => Err(format!("`{s}` is not a length")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        assert_eq!(parse_length("1e4"), Ok(10_000));
        assert_eq!(parse_length("250"), Ok(250));
        assert!(parse_length("1.5").is_err());
        assert!(parse_length("-1e3").is_err());
    }

    #[test]
    fn symbols() {
        assert_eq!(parse_symbol("A"), Ok(b'A'));
        assert_eq!(parse_symbol("0x0a"), Ok(b'\n'));
        assert!(parse_symbol("AB").is_err());
    }

    #[test]
    fn definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
