//! `rllseq`: construct, verify, count, decode, and simulate maximum-length
//! run-length-limited sequences in the de Bruijn graph.
//!
//! Results go to stdout, diagnostics to stderr. Exit code 0 on success,
//! 1 on validation failures (bad flags, out-of-range parameters, malformed
//! input), 2 on resource or internal errors (enumeration caps, overflow).

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rllseq::bitword::BitWord;
use rllseq::enumeration::{count_necklace_words, count_table, rate_table, rates_to_tsv};
use rllseq::generators::{
    self, generate_lex, generate_lex_acyclic, generate_merge, SequenceBuffer,
};
use rllseq::locate::{build_index, locate, locate_lex_stream};
use rllseq::oracle::{check_exact_cover, max_cycle_words, max_path_words};
use rllseq::syncsim::{simulate, ChannelConfig};
use rllseq::vset::{generate_merge_v, parse_key_hex, vset_layout};
use rllseq::Error;

#[derive(Parser)]
#[command(
    name = "rllseq",
    version,
    about = "Maximum-length (n,s)-sequences in the de Bruijn graph"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Merge,
    MergeV,
    Lex,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Bits,
    Packed,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LocateAlgo {
    Stream,
    Index,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a maximum-length (n,s)-sequence
    Generate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Number of stored words for merge-v (default 2)
        #[arg(long)]
        k: Option<u32>,
        /// Key for merge-v: ceil(K/4) hex digits, big-endian (default all zeros)
        #[arg(long)]
        key: Option<String>,
        /// Emit the maximum-length acyclic form (lex only)
        #[arg(long)]
        acyclic: bool,
        #[arg(long, value_enum, default_value = "bits")]
        format: OutFormat,
    },
    /// Check a sequence against the (n,s)-window properties
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        /// Treat the sequence as cyclic (windows wrap around)
        #[arg(long)]
        cyclic: bool,
        /// Read the bit string from a file instead of stdin
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Decode the position of an n-bit window
    Locate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        /// The window, as n ASCII bits
        #[arg(long)]
        window: String,
        #[arg(long, value_enum, default_value = "stream")]
        algo: LocateAlgo,
        /// Sequence file to index (cyclic ASCII bits; index mode only)
        #[arg(long)]
        seq: Option<PathBuf>,
    },
    /// Emit the exact (ell, h) count table
    Enumerate {
        #[arg(long = "n-max")]
        n_max: u32,
        #[arg(long = "s-max")]
        s_max: u32,
        #[arg(long, value_enum, default_value = "tsv")]
        format: TableFormat,
    },
    /// Emit the asymptotic rate table
    Rates {
        #[arg(long = "s-max")]
        s_max: u32,
    },
    /// Exhaustive search ground truth on small orders
    Oracle {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
    },
    /// Simulate single-window acquisition over a noisy slot channel
    Simulate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long = "flip-prob", default_value_t = 0.0)]
        flip_prob: f64,
    },
}

enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Lib(
            Error::InvalidParameter(_)
            | Error::Parse(_)
            | Error::KeyLength { .. }
            | Error::LayoutInfeasible(_)
            | Error::DuplicateWindows,
        ) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed pipe downstream (e.g. `| head`) is a normal way to stop.
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("rllseq: {e}"),
                Failure::Io(e) => eprintln!("rllseq: {e}"),
            }
            ExitCode::from(exit_code(&f))
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match command {
        Command::Generate {
            n,
            s,
            algo,
            k,
            key,
            acyclic,
            format,
        } => {
            let seq = build_sequence(n, s, algo, k, key, acyclic)?;
            match format {
                OutFormat::Bits => writeln!(out, "{seq}")?,
                OutFormat::Packed => out.write_all(&seq.to_packed())?,
            }
            out.flush()?;
            Ok(())
        }
        Command::Verify {
            n,
            s,
            cyclic,
            input,
        } => {
            let text = read_input(input)?;
            let seq = SequenceBuffer::from_bit_str(text.trim(), n, s, cyclic)?;
            let report = generators::verify(&seq)?;
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            )?;
            Ok(())
        }
        Command::Locate {
            n,
            s,
            window,
            algo,
            seq,
        } => {
            let w: BitWord = window.parse()?;
            if w.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "window has {} bits, expected n = {n}",
                    w.len()
                ))
                .into());
            }
            let position = match (algo, seq) {
                (LocateAlgo::Stream, None) => locate_lex_stream(n, s, w)?,
                (LocateAlgo::Stream, Some(_)) => {
                    return Err(Error::InvalidParameter(
                        "--seq applies to --algo index; the stream decoder \
                         reads the lexicographic construction directly"
                            .into(),
                    )
                    .into());
                }
                (LocateAlgo::Index, source) => {
                    let seq = match source {
                        Some(path) => {
                            let text = fs::read_to_string(path)?;
                            SequenceBuffer::from_bit_str(text.trim(), n, s, true)?
                        }
                        None => generate_lex(n, s)?,
                    };
                    locate(&build_index(&seq)?, w)
                }
            };
            match position {
                Some(p) => writeln!(out, "{p}")?,
                None => writeln!(out, "not-present")?,
            }
            Ok(())
        }
        Command::Enumerate {
            n_max,
            s_max,
            format,
        } => {
            let table = count_table(n_max, s_max)?;
            match format {
                TableFormat::Tsv => write!(out, "{}", table.to_tsv())?,
                TableFormat::Json => writeln!(out, "{}", table.to_json())?,
            }
            Ok(())
        }
        Command::Rates { s_max } => {
            if s_max < 1 {
                return Err(Error::InvalidParameter("rates need s-max >= 1".into()).into());
            }
            write!(out, "{}", rates_to_tsv(&rate_table(s_max)))?;
            Ok(())
        }
        Command::Oracle { n, s } => {
            let ell = count_necklace_words(n, s)?;
            let cycle = max_cycle_words(n, s)?;
            let path = max_path_words(n, s)?;
            let path_bound = if s < n - 1 { ell + u64::from(s) } else { ell };
            let exact_cover = if n <= rllseq::oracle::MAX_EXHAUSTIVE_SEARCH_ORDER {
                json!(check_exact_cover(n, s)?)
            } else {
                json!(null)
            };
            let report = json!({
                "n": n,
                "s": s,
                "ell": ell,
                "max_cycle_words": cycle,
                "max_path_words": path,
                "cycle_matches_ell": cycle as u64 == ell,
                "path_matches_bound": path as u64 == path_bound,
                "exact_cover": exact_cover,
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            )?;
            Ok(())
        }
        Command::Simulate {
            n,
            s,
            trials,
            seed,
            flip_prob,
        } => {
            let seq = generate_lex(n, s)?;
            let report = simulate(
                &seq,
                &ChannelConfig {
                    flip_prob,
                    trials,
                    seed,
                },
            )?;
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            )?;
            Ok(())
        }
    }
}

fn build_sequence(
    n: u32,
    s: u32,
    algo: Algo,
    k: Option<u32>,
    key: Option<String>,
    acyclic: bool,
) -> Result<SequenceBuffer, Failure> {
    if acyclic && !matches!(algo, Algo::Lex) {
        return Err(Error::InvalidParameter(
            "acyclic output is only defined for --algo lex".into(),
        )
        .into());
    }
    if !matches!(algo, Algo::MergeV) && (k.is_some() || key.is_some()) {
        return Err(
            Error::InvalidParameter("--k and --key apply to --algo merge-v only".into()).into(),
        );
    }
    let seq = match algo {
        Algo::Merge => generate_merge(n, s)?,
        Algo::Lex => {
            if acyclic {
                generate_lex_acyclic(n, s)?
            } else {
                generate_lex(n, s)?
            }
        }
        Algo::MergeV => {
            let k = k.unwrap_or(2);
            let spec = vset_layout(n, s, k)?;
            let free_bits = match key {
                Some(hex) => parse_key_hex(&hex, spec.key_bits())?,
                None => vec![0u8; spec.key_bits()],
            };
            generate_merge_v(n, s, k, &free_bits)?
        }
    };
    Ok(seq)
}

fn read_input(input: Option<PathBuf>) -> Result<String, Failure> {
    match input {
        Some(path) => Ok(fs::read_to_string(path)?),
        None => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}
