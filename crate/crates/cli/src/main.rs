//! `skewcode` command-line tool.
//!
//! Exit status: 0 on success, 1 when a verification or round trip fails,
//! 2 on usage errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skewcode::channel::SkewMode;

#[derive(Debug, Parser)]
#[command(
    name = "skewcode",
    version,
    about = "Zero-error codes for the (1,w) skew channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Binary,
    Ternary,
    TernaryPinned,
}

impl From<Mode> for SkewMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Binary => SkewMode::Binary,
            Mode::Ternary => SkewMode::Ternary,
            Mode::TernaryPinned => SkewMode::TernaryPinned,
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to PATH instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Table of F_w and C_1w for w = 1..=w-max, plus the AAS bounds
    Capacity {
        /// Largest block length in the table
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10_000))]
        w_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// List the optimal codebook for one block length
    Codebook {
        /// Block length
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        w: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Export confusability-graph components as edge lists
    Graph {
        /// Block length
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        w: u32,
        /// Single weight class; all classes when omitted
        #[arg(long)]
        h: Option<u32>,
        /// Build edges by exhaustive channel simulation
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "binary")]
        mode: Mode,
        #[command(flatten)]
        common: Common,
    },
    /// Check the code's claims exhaustively for one block length (w <= 8)
    Verify {
        /// Block length
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        w: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a codec stream of random messages through random skews
    Simulate {
        /// Block length
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        w: u32,
        #[arg(long, default_value_t = 16)]
        blocks: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "binary")]
        mode: Mode,
        /// Signaling interval T in seconds; adds physical timestamps
        #[arg(long)]
        period: Option<f64>,
        /// Propagation delay tau in seconds (used with --period)
        #[arg(long, default_value_t = 0.0)]
        delay: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Decode a codec stream and compare against its message fields
    Decode {
        /// Block length
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        w: u32,
        /// Stream file; standard input when omitted
        #[arg(long, value_name = "PATH")]
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Encode, transmit and decode, exhaustively or with seeded random trials
    Roundtrip {
        /// Block length
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        w: u32,
        /// Every message under every skew pattern (w <= 8)
        #[arg(long, conflicts_with = "trials")]
        exhaustive: bool,
        /// Random trials per mode [default: exhaustive for w <= 8, else 10000]
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to one skew mode; all modes when omitted
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[command(flatten)]
        common: Common,
    },
}

/// Failure modes mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<skewcode::Error> for Failure {
    fn from(e: skewcode::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Capacity { w_max, common } => commands::capacity(w_max as usize, &common),
        Command::Codebook { w, common } => commands::codebook(w as usize, &common),
        Command::Graph {
            w,
            h,
            oracle,
            mode,
            common,
        } => commands::graph(
            w as usize,
            h.map(|h| h as usize),
            oracle,
            mode.into(),
            &common,
        ),
        Command::Verify { w, common } => commands::verify(w as usize, &common),
        Command::Simulate {
            w,
            blocks,
            seed,
            mode,
            period,
            delay,
            common,
        } => commands::simulate(
            w as usize,
            blocks,
            seed,
            mode.into(),
            period,
            delay,
            &common,
        ),
        Command::Decode { w, input, common } => commands::decode(w as usize, input, &common),
        Command::Roundtrip {
            w,
            exhaustive,
            trials,
            seed,
            mode,
            common,
        } => commands::roundtrip(
            w as usize,
            exhaustive,
            trials,
            seed,
            mode.map(Into::into),
            &common,
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("skewcode: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("skewcode: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("skewcode: {e}");
            ExitCode::from(1)
        }
    }
}
