use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use reorder_channel::capacity::oracle_capacity;
use reorder_channel::simulate::{run_monte_carlo_partitioned, run_monte_carlo_with_trace};
use reorder_channel::sweep::{run_sweep, to_csv, SweepSpec};
use reorder_channel::{
    construct_strategy_set, mutual_info_ty, BinaryInputChannel, ChannelKind, ChannelSpec, Error,
    FrameConfig,
};

/// Capacity, construction and simulation tools for channels that signal
/// through the order of packets in a frame.
#[derive(Parser, Debug)]
#[command(name = "reorder-channel", version, after_help = ENV_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const ENV_HELP: &str = "\
Environment:
  REORDER_MAX_OUTPUTS   largest output space J^F evaluated exactly (default 531441)
  REORDER_ORACLE_LIMIT  largest strategies x outputs product for the oracle (default 1000000)

Raising either limit trades memory and time for reach; the cost grows
exponentially in F and may exhaust memory.";

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the capacity-achieving strategy set for frame length F.
    Construct {
        #[arg(value_name = "F")]
        frame_len: u32,
        /// Emit a JSON array instead of one multisymbol per line.
        #[arg(long)]
        json: bool,
    },
    /// Secondary capacity of the constructed strategy set.
    Capacity {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        frame: FrameArgs,
    },
    /// Brute-force capacity over every strategy (Blahut–Arimoto).
    Oracle {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        frame: FrameArgs,
    },
    /// Monte Carlo transmission of the constructed strategy set.
    Simulate {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(long, default_value_t = 1_000_000)]
        frames: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads. The report does not depend on this.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Write a per-frame CSV trace here (single-threaded).
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// CSV grid over F, a and p for one preset.
    Sweep {
        #[arg(long)]
        preset: ChannelKind,
        /// Comma-separated list.
        #[arg(
            long,
            required = true,
            value_delimiter = ',',
            allow_negative_numbers = true,
            value_name = "P[,P...]"
        )]
        p: Vec<f64>,
        #[arg(
            long,
            required = true,
            value_delimiter = ',',
            allow_negative_numbers = true,
            value_name = "A[,A...]"
        )]
        a: Vec<f64>,
        /// `lo..hi` (inclusive), a single value, or a comma-separated list.
        #[arg(long = "F", value_parser = parse_frame_lens, value_name = "RANGE")]
        frame_lens: FrameLens,
        /// Report bits per packet instead of bits per frame.
        #[arg(long)]
        normalize: bool,
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "channel_source")]
struct ChannelArgs {
    #[arg(long, requires = "p")]
    preset: Option<ChannelKind>,
    /// JSON channel description, inline or `@path`.
    #[arg(long, value_name = "JSON")]
    channel_json: Option<String>,
}

#[derive(Args, Debug)]
struct FrameArgs {
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long = "F", value_name = "F")]
    frame_len: u32,
}

impl ChannelArgs {
    fn build(&self, p: Option<f64>) -> Result<BinaryInputChannel, Error> {
        if let Some(kind) = self.preset {
            let p = p.ok_or_else(|| Error::Domain("--preset needs --p".into()))?;
            return BinaryInputChannel::preset(kind, p);
        }
        let raw = self.channel_json.as_deref().unwrap_or_default();
        let text = match raw.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {path}: {e}")))?,
            None => raw.to_string(),
        };
        let spec: ChannelSpec = serde_json::from_str(&text)
            .map_err(|e| Error::Domain(format!("bad channel JSON: {e}")))?;
        spec.build()
    }
}

#[derive(Clone, Debug)]
struct FrameLens(Vec<u32>);

fn parse_frame_lens(s: &str) -> Result<FrameLens, String> {
    let int = |v: &str| v.trim().parse::<u32>().map_err(|e| format!("{v:?}: {e}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (int(lo)?, int(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        return Ok(FrameLens((lo..=hi).collect()));
    }
    s.split(',')
        .map(int)
        .collect::<Result<_, _>>()
        .map(FrameLens)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn io_error(e: io::Error) -> Error {
    Error::Domain(format!("write failed: {e}"))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Construct { frame_len, json } => {
            let set = construct_strategy_set(frame_len)?;
            if json {
                return print_json(&set.multisymbols());
            }
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            for m in set.multisymbols() {
                writeln!(out, "{m}").map_err(io_error)?;
            }
            out.flush().map_err(io_error)
        }
        Command::Capacity { channel, frame } => {
            let ch = channel.build(frame.p)?;
            let config = FrameConfig::new(frame.frame_len, frame.a)?;
            let set = construct_strategy_set(frame.frame_len)?;
            print_json(&mutual_info_ty(&ch, &config, &set)?)
        }
        Command::Oracle { channel, frame } => {
            let ch = channel.build(frame.p)?;
            let config = FrameConfig::new(frame.frame_len, frame.a)?;
            print_json(&oracle_capacity(&ch, &config)?)
        }
        Command::Simulate {
            channel,
            frame,
            frames,
            seed,
            threads,
            trace,
        } => {
            let ch = channel.build(frame.p)?;
            let config = FrameConfig::new(frame.frame_len, frame.a)?;
            let set = construct_strategy_set(frame.frame_len)?;
            let report = match trace {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| {
                        Error::Domain(format!("cannot create {}: {e}", path.display()))
                    })?;
                    let mut w = BufWriter::new(file);
                    let r = run_monte_carlo_with_trace(&ch, &config, &set, frames, seed, &mut w)?;
                    w.flush().map_err(io_error)?;
                    r
                }
                None => run_monte_carlo_partitioned(&ch, &config, &set, frames, seed, threads)?,
            };
            print_json(&report)
        }
        Command::Sweep {
            preset,
            p,
            a,
            frame_lens,
            normalize,
            output,
        } => {
            let spec = SweepSpec {
                preset,
                p_values: p,
                a_values: a,
                f_values: frame_lens.0,
                normalize,
            };
            let csv = to_csv(&run_sweep(&spec)?);
            match output {
                Some(path) => std::fs::write(&path, csv)
                    .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display()))),
                None => io::stdout().write_all(csv.as_bytes()).map_err(io_error),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
