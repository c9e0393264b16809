//! Command-line front end: verify the ratio law on a file of
//! generators, enumerate face and diagonal labels, mint random
//! instances, and sweep seeded corpora across dimensions.
//!
//! Exit codes: 0 verified/success, 1 identity violation, 2 input or
//! usage error.

mod input;
mod render;

use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use gramlaw::{
    count_diagonals, count_faces, diagonal_labels, face_labels, random_generators, sweep,
    DiagonalLabel, FaceLabel, InstanceSpec, ModelError, Rational, Scalar, SweepConfig,
    DEFAULT_REL_TOLERANCE,
};
use input::InputDocument;
use render::Format;

#[derive(Parser)]
#[command(
    name = "gramlaw",
    version,
    about = "Squared k-measures of parallelotope faces and diagonals, and the ratio law between their quadratic means"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Rational arithmetic; residuals must vanish identically
    Exact,
    /// f64 arithmetic; residuals compare against --tol
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Check diag_mean_sq / face_mean_sq == N-k+1 on a generator file
    Verify(VerifyArgs),
    /// List face or diagonal labels, optionally with squared measures
    Enumerate(EnumerateArgs),
    /// Write a random independent integer family as an input file
    Random(RandomArgs),
    /// Verify seeded random instances across a dimension range
    Sweep(SweepArgs),
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("dims").required(true).args(["k", "all_k"])))]
struct VerifyArgs {
    /// Input JSON file with a "vectors" matrix
    input: String,
    /// Face dimension to check
    #[arg(short, long)]
    k: Option<usize>,
    /// Check every k from 1 to N-1
    #[arg(long)]
    all_k: bool,
    /// Arithmetic mode; default is exact unless the file has decimal entries
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Relative tolerance for float-mode residuals
    #[arg(long, default_value_t = DEFAULT_REL_TOLERANCE)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Faces,
    Diagonals,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Input JSON file with a "vectors" matrix
    input: String,
    /// Which label family to list
    #[arg(value_enum)]
    what: What,
    /// Face dimension
    #[arg(short, long)]
    k: usize,
    /// Attach each label's squared measure
    #[arg(long)]
    measures: bool,
    /// Arithmetic mode; default is exact unless the file has decimal entries
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct RandomArgs {
    /// Destination path for the generated input file
    out: String,
    /// Number of generators N
    #[arg(long)]
    generators: usize,
    /// Ambient dimension n (defaults to N)
    #[arg(long)]
    ambient: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Smallest entry value
    #[arg(long, default_value_t = -9, allow_hyphen_values = true)]
    low: i64,
    /// Largest entry value
    #[arg(long, default_value_t = 9, allow_hyphen_values = true)]
    high: i64,
}

#[derive(Clone, Debug)]
struct DimRange {
    lo: usize,
    hi: usize,
}

fn parse_dim_range(text: &str) -> Result<DimRange, String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {text:?}"))?;
    let lo = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    Ok(DimRange { lo, hi })
}

#[derive(Args)]
struct SweepArgs {
    /// Inclusive dimension range LO..HI for the generator count N
    #[arg(long, value_parser = parse_dim_range)]
    range: DimRange,
    /// Random instances per dimension
    #[arg(long, default_value_t = 10)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Smallest entry value
    #[arg(long, default_value_t = -9, allow_hyphen_values = true)]
    low: i64,
    /// Largest entry value
    #[arg(long, default_value_t = 9, allow_hyphen_values = true)]
    high: i64,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Relative tolerance for float-mode residuals
    #[arg(long, default_value_t = DEFAULT_REL_TOLERANCE)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Verify(args) => cmd_verify(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Random(args) => cmd_random(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

/// Exact is the stronger default; decimal entries opt a file into float.
fn resolve_mode(flag: Option<Mode>, doc: &InputDocument) -> Mode {
    flag.unwrap_or(if doc.any_decimal { Mode::Float } else { Mode::Exact })
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let doc = InputDocument::load(&args.input)?;
    match resolve_mode(args.mode, &doc) {
        Mode::Exact => verify_in::<Rational>(&doc, &args),
        Mode::Float => verify_in::<f64>(&doc, &args),
    }
}

fn verify_in<S: Scalar>(doc: &InputDocument, args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let generators = doc.to_generators::<S>()?;
    let reports = match args.k {
        Some(k) => vec![generators.verify(k)?],
        None => generators.verify_all()?,
    };
    print!("{}", render::reports(&reports, args.tol, args.format));
    if reports.iter().all(|r| r.passed(args.tol)) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> anyhow::Result<ExitCode> {
    let doc = InputDocument::load(&args.input)?;
    match resolve_mode(args.mode, &doc) {
        Mode::Exact => enumerate_in::<Rational>(&doc, &args),
        Mode::Float => enumerate_in::<f64>(&doc, &args),
    }
}

fn enumerate_in<S: Scalar>(doc: &InputDocument, args: &EnumerateArgs) -> anyhow::Result<ExitCode> {
    let generators = doc.to_generators::<S>()?;
    let n = generators.intrinsic_dim();
    let k = args.k;
    if k < 1 || k >= n {
        return Err(ModelError::InvalidDimension { k, max_k: n - 1 }.into());
    }
    let text = match args.what {
        What::Faces => {
            let rows: Vec<(FaceLabel, Option<S>)> = face_labels(n, k)?
                .map(|label| {
                    let measure = if args.measures {
                        Some(generators.face_measure_sq(&label)?)
                    } else {
                        None
                    };
                    Ok((label, measure))
                })
                .collect::<Result<_, ModelError>>()?;
            let listing = render::FaceListing {
                k,
                n,
                rows,
                count: count_faces(n, k)?,
            };
            listing.render(args.format)
        }
        What::Diagonals => {
            let rows: Vec<(DiagonalLabel, Option<S>)> = diagonal_labels(n, k)?
                .map(|label| {
                    let measure = if args.measures {
                        Some(generators.diagonal_measure_sq(&label)?)
                    } else {
                        None
                    };
                    Ok((label, measure))
                })
                .collect::<Result<_, ModelError>>()?;
            let listing = render::DiagonalListing {
                k,
                n,
                rows,
                count: count_diagonals(n, k)?,
            };
            listing.render(args.format)
        }
    };
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_random(args: RandomArgs) -> anyhow::Result<ExitCode> {
    let spec = InstanceSpec {
        n_generators: args.generators,
        ambient_dim: args.ambient.unwrap_or(args.generators),
        entry_low: args.low,
        entry_high: args.high,
        seed: args.seed,
    };
    let generators = random_generators::<Rational>(&spec)?;
    let rows: Vec<Vec<i64>> = generators
        .vectors()
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .map(|c| c.numer().to_i64().expect("integer entries within range"))
                .collect()
        })
        .collect();
    let doc = serde_json::json!({ "vectors": rows });
    let text = format!("{}\n", serde_json::to_string_pretty(&doc).expect("static shape"));
    std::fs::write(&args.out, text).with_context(|| format!("cannot write {}", args.out))?;
    let certificate = gramlaw::measure::determinant(generators.gram());
    println!("wrote {}", args.out);
    println!(
        "independence certificate: gram determinant = {}",
        certificate.render()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> anyhow::Result<ExitCode> {
    let config = SweepConfig {
        n_min: args.range.lo,
        n_max: args.range.hi,
        trials: args.trials,
        base_seed: args.seed,
        entry_low: args.low,
        entry_high: args.high,
        rel_tol: args.tol,
    };
    match args.mode {
        Mode::Exact => sweep_in::<Rational>(&config, args.format),
        Mode::Float => sweep_in::<f64>(&config, args.format),
    }
}

fn sweep_in<S: Scalar>(config: &SweepConfig, format: Format) -> anyhow::Result<ExitCode> {
    let summary = sweep::<S>(config)?;
    print!("{}", render::sweep_summary(&summary, format));
    if summary.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
