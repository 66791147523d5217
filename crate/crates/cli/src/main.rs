//! `fatgin`: generator tables, gin staircases and limiting shapes for
//! symbolic powers of `l` collinear points plus one point off the line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure.

mod analyze;
mod report;
mod shape;
mod verify;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;

#[derive(Parser)]
#[command(name = "fatgin", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Generator table, staircase and polytopes for one (l, m).
    Analyze {
        #[arg(long, value_parser = parse_l)]
        l: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Compare against the linear-algebra oracle.
        #[arg(long)]
        verify: bool,
        /// Seed for the random coordinate change used by the gin oracle.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Never run the oracle, even for an uncertified m.
        #[arg(long)]
        no_oracle: bool,
    },
    /// The limiting shape; SVG on stdout unless --format is given.
    Shape {
        #[arg(long, value_parser = parse_l)]
        l: u32,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Write the SVG drawing to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Overlay the scaled Newton polytope for this m.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        overlay_m: Option<u64>,
    },
    /// Run the invariant suite over ranges of l and m (`a..b` is inclusive).
    Verify {
        #[arg(long, value_parser = parse_l_range)]
        l: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_m_range)]
        m: RangeInclusive<u64>,
        /// Also compare staircases with the gin oracle where certified.
        #[arg(long)]
        gin: bool,
        #[arg(long)]
        no_oracle: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn check_l(l: u32) -> Result<u32, String> {
    if l < fatgin::divisor_lattice::MIN_COLLINEAR {
        return Err(format!("l must be ≥ 3 (got {l})"));
    }
    Ok(l)
}

fn parse_l(s: &str) -> Result<u32, String> {
    check_l(s.parse().map_err(|e| format!("{e}"))?)
}

fn parse_range<T>(s: &str) -> Result<RangeInclusive<T>, String>
where
    T: std::str::FromStr + PartialOrd + Copy,
    T::Err: std::fmt::Display,
{
    let num = |t: &str| t.trim().parse::<T>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("range {s} is empty"));
    }
    Ok(a..=b)
}

fn parse_l_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let r = parse_range::<u32>(s)?;
    check_l(*r.start())?;
    Ok(r)
}

fn parse_m_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let r = parse_range::<u64>(s)?;
    if *r.start() < 1 {
        return Err("m must be ≥ 1".into());
    }
    Ok(r)
}

fn fail(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_USAGE)
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<(), String> {
    let s = serde_json::to_string_pretty(v).map_err(|e| e.to_string())?;
    println!("{s}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Analyze {
            l,
            m,
            format,
            verify,
            seed,
            no_oracle,
        } => {
            let opts = analyze::AnalyzeOptions {
                verify,
                seed,
                no_oracle,
            };
            let report = match analyze::run(l, m, &opts) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            match format {
                Format::Json => {
                    if let Err(e) = print_json(&report) {
                        return fail(e);
                    }
                }
                Format::Csv => print!("{}", analyze::to_csv(&report)),
                Format::Table => print!("{}", analyze::to_table(&report)),
            }
            match &report.verification {
                Some(v) if !v.passed => {
                    for c in v.checks.iter().filter(|c| !c.passed) {
                        eprintln!(
                            "verification failed at (l={l}, m={m}) in {}: {}",
                            c.name,
                            c.first_failure.as_deref().unwrap_or("")
                        );
                    }
                    ExitCode::from(EXIT_MISMATCH)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Command::Shape {
            l,
            format,
            svg,
            overlay_m,
        } => {
            let report = match shape::run(l, overlay_m) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let drawing = shape::to_svg(&report);
            if let Some(path) = &svg {
                if let Err(e) = std::fs::write(path, &drawing) {
                    return fail(format!("cannot write {}: {e}", path.display()));
                }
            }
            match (format, &svg) {
                (Some(Format::Json), _) => {
                    if let Err(e) = print_json(&report) {
                        return fail(e);
                    }
                }
                (Some(Format::Csv), _) => print!("{}", shape::to_csv(&report)),
                (Some(Format::Table), _) | (None, Some(_)) => {
                    print!("{}", shape::to_table(&report))
                }
                (None, None) => print!("{drawing}"),
            }
            ExitCode::SUCCESS
        }
        Command::Verify {
            l,
            m,
            gin,
            no_oracle,
            seed,
        } => {
            let opts = verify::VerifyOptions {
                gin,
                no_oracle,
                seed,
            };
            let results = match verify::run(l, m, &opts) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            print!("{}", verify::matrix(&results));
            match results
                .iter()
                .find_map(|r| r.first_failure().map(|f| (r, f)))
            {
                Some((r, (check, why))) => {
                    eprintln!("first failure: l={} m={} {check} {why}", r.l, r.m);
                    ExitCode::from(EXIT_MISMATCH)
                }
                None => ExitCode::SUCCESS,
            }
        }
    }
}
