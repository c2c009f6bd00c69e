use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use super::{load_code, report_to_json, save_code};
use crate::analysis::{structure_report, AnalysisConfig};
use crate::bch::{bch_dimension, delta_max, BchSpec};
use crate::construct::{build_type1, build_type2, select_cosets};
use crate::galois::{cyclotomic_coset, find_prime_lengths, CodeFieldParams};
use crate::sim::{emit_csv, linear_grid, run_sweep, DecoderChoice, RateNormalization, SimChannel, SimPlan};
use crate::{Error, Result};

/// Build, analyse and simulate BCH-derived LDPC codes.
#[derive(Debug, Parser)]
#[command(name = "nbch-ldpc", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a parity-check matrix and write it as alist.
    #[command(subcommand)]
    Construct(Construct),
    /// Structural report (regularity, 4-cycles, girth, rank, stopping distance) as JSON.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        /// Largest stopping-set size to search [default: column weight + 2, capped by the work limit]
        #[arg(long)]
        stopping_budget: Option<usize>,
        #[arg(long)]
        report: PathBuf,
    },
    /// Monte Carlo BER/FER sweep, written as CSV.
    Simulate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        channel: ChannelArg,
        /// `start:stop:step`, inclusive. Eb/N0 in dB for awgn, probabilities otherwise.
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = 50)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stop a grid point after this many bit errors.
        #[arg(long, default_value_t = 100)]
        min_errors: u64,
        /// Stop a grid point after this many frames.
        #[arg(long, default_value_t = 200_000)]
        max_frames: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write the full result as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Normalise Eb/N0 with the design rate instead of dimension / length.
        #[arg(long)]
        design_rate: bool,
        #[arg(long, value_enum, default_value_t = DecoderArg::SumProduct)]
        decoder: DecoderArg,
        /// Send random codewords instead of the all-zero word.
        #[arg(long)]
        random_codewords: bool,
    },
    /// Admissible prime lengths for (q, m) with δ_max and dimensions per δ.
    Params {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// Circulant expansion of the BCH exponent matrix.
    Type1 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Concatenated cyclotomic-coset circulants.
    Type2 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        ell: usize,
        /// Coset leaders to use, comma separated [default: the smallest admissible ones]
        #[arg(long, value_delimiter = ',')]
        cosets: Option<Vec<u64>>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChannelArg {
    Awgn,
    Bsc,
    Bec,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecoderArg {
    SumProduct,
    BitFlip,
}

/// Runs the CLI on `argv` (program name first). Returns the exit code:
/// 0 on success, 1 on validation errors, 2 on I/O errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => 2,
                _ => 1,
            }
        }
    }
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::params(format!("grid '{text}': '{s}' is not a number")))
    };
    match parts.as_slice() {
        [a] => Ok(vec![num(a)?]),
        [a, b, step] => linear_grid(num(a)?, num(b)?, num(step)?),
        _ => Err(Error::params(format!("grid '{text}' must be start:stop:step"))),
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct(Construct::Type1 { q, m, n, delta, out }) => {
            let code = build_type1(&BchSpec::from_values(q, m, n, delta)?);
            save_code(&code, &out)?;
            eprintln!(
                "wrote {} x {} matrix to {}",
                code.h.rows(),
                code.h.cols(),
                out.display()
            );
        }
        Command::Construct(Construct::Type2 { q, n, ell, cosets, out }) => {
            let cosets = match cosets {
                Some(leaders) => {
                    if leaders.len() != ell {
                        return Err(Error::params(format!("--ell {ell} but {} cosets given", leaders.len())));
                    }
                    leaders
                        .into_iter()
                        .map(|x| cyclotomic_coset(x, n, q))
                        .collect::<Result<Vec<_>>>()?
                }
                None => select_cosets(n, q, ell)?,
            };
            let code = build_type2(n, q, &cosets)?;
            save_code(&code, &out)?;
            eprintln!(
                "wrote {} x {} matrix to {}",
                code.h.rows(),
                code.h.cols(),
                out.display()
            );
        }
        Command::Analyze {
            input,
            stopping_budget,
            report,
        } => {
            let code = load_code(&input)?;
            let cfg = AnalysisConfig {
                stopping_budget,
                ..AnalysisConfig::default()
            };
            let r = structure_report(&code, &cfg)?;
            std::fs::write(&report, report_to_json(&r)?)?;
        }
        Command::Simulate {
            input,
            channel,
            grid,
            iters,
            seed,
            min_errors,
            max_frames,
            out,
            json,
            design_rate,
            decoder,
            random_codewords,
        } => {
            let code = load_code(&input)?;
            let channel = match channel {
                ChannelArg::Awgn => SimChannel::Awgn,
                ChannelArg::Bsc => SimChannel::Bsc,
                ChannelArg::Bec => SimChannel::Bec,
            };
            let plan = SimPlan {
                max_iter: iters,
                min_bit_errors: min_errors,
                max_frames,
                seed,
                rate: if design_rate {
                    RateNormalization::Design
                } else {
                    RateNormalization::True
                },
                decoder: match decoder {
                    DecoderArg::SumProduct => DecoderChoice::SumProduct,
                    DecoderArg::BitFlip => DecoderChoice::BitFlip,
                },
                random_codewords,
                ..SimPlan::new(channel, parse_grid(&grid)?)
            };
            let result = run_sweep(&code, &plan)?;
            for w in &result.warnings {
                eprintln!("warning: {w}");
            }
            std::fs::write(&out, emit_csv(&result))?;
            if let Some(path) = json {
                std::fs::write(path, serde_json::to_string_pretty(&result)? + "\n")?;
            }
        }
        Command::Params { q, m } => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            params_table(q, m, &mut w)?;
        }
    }
    Ok(())
}

fn params_table(q: u64, m: u64, w: &mut impl std::io::Write) -> Result<()> {
    let lengths = find_prime_lengths(q, m)?;
    if lengths.is_empty() {
        writeln!(w, "no prime lengths for q = {q}, m = {m}")?;
    }
    for n in lengths {
        let params = CodeFieldParams::with_order(q, m, n)?;
        let dmax = delta_max(&params);
        writeln!(w, "n = {n}  mu = {}  delta_max = {dmax}", params.mu)?;
        for delta in 2..=dmax {
            let k = bch_dimension(&BchSpec::new(params, delta)?)?;
            writeln!(w, "  delta = {delta}  k = {k}")?;
        }
    }
    Ok(())
}
