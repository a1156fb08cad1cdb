//! `segre-mcm`: Hilbert series, Segre products, local cohomology tables and
//! MCM verdicts from the command line.
//!
//! Exit codes: 0 exists / success, 3 does not exist, 4 inconclusive,
//! 2 invalid input, 5 output not writable, 1 internal error.

mod render;
mod sweep;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use segre_mcm_core::report::{cohomology_entries, SeriesReport};
use segre_mcm_core::{
    invariants::very_small_from, kunneth_table, rank_one_verdict, segre_hilbert_series, segre_invariants,
    Assumption, Error, GradedRingSpec, Outcome, ReportEnvelope, SegreRingSpec,
};

use crate::sweep::{DegreeRule, OutputFormat, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "segre-mcm", version, about = "Exact invariants of Segre products of complete intersections")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hilbert series and series invariants of one ring.
    Series {
        /// Ring spec, e.g. `ci:n=5,deg=6` or `poly:n=2`.
        spec: String,
        /// Number of series coefficients to print.
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Hilbert series and invariants of the Segre product A # B.
    Segre(PairArgs),
    /// Local cohomology table of A[twist] # B via the Künneth formula.
    Localcoh {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
    },
    /// Rank-one and very small MCM verdicts for A # B.
    Verdict {
        #[command(flatten)]
        pair: PairArgs,
        /// Assert that A has an isolated singularity.
        #[arg(long)]
        assume_isolated_singularity: bool,
    },
    /// Tabulate invariants and verdicts over a family of complete intersections.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Spec of factor A.
    a: String,
    /// Spec of factor B.
    b: String,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    n_min: u32,
    #[arg(long)]
    n_max: u32,
    /// Fixed relation degrees, e.g. `2+2`, used for every n.
    #[arg(long, conflicts_with = "degree_offsets")]
    degrees: Option<String>,
    /// Total relation degree offsets relative to n, e.g. `1,2,3` for d = n+1..n+3.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    degree_offsets: Vec<u32>,
    /// Largest number of relations.
    #[arg(long, default_value_t = 1)]
    h_max: u32,
    /// Factor B.
    #[arg(long, default_value = "poly:n=2")]
    b: String,
    /// Do not assert an isolated singularity for the swept rings.
    #[arg(long)]
    no_assume_isolated: bool,
    /// Require dim A >= 4 throughout (n_min >= h_max + 4).
    #[arg(long)]
    theorem_mode: bool,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Debug)]
pub enum CliError {
    Spec { input: String, error: Error },
    Usage(String),
    Output(io::Error),
    Internal(Error),
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        match error {
            Error::Parse { .. } | Error::InvalidSpec(_) | Error::FactorDimensionTooSmall { .. } => {
                CliError::Usage(error.to_string())
            }
            other => CliError::Internal(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Spec { .. } | CliError::Usage(_) => 2,
            CliError::Output(_) => 5,
            CliError::Internal(_) => 1,
        }
    }

    fn report(&self) {
        match self {
            CliError::Spec {
                input,
                error: Error::Parse { position, message },
            } => {
                eprintln!("error: invalid ring spec at position {position}: {message}");
                eprintln!("  {input}");
                eprintln!("  {}^", " ".repeat(*position));
            }
            CliError::Spec { input, error } => eprintln!("error: invalid ring spec '{input}': {error}"),
            CliError::Usage(msg) => eprintln!("error: {msg}"),
            CliError::Output(e) => eprintln!("error: cannot write output: {e}"),
            CliError::Internal(e) => eprintln!("internal error: {e}"),
        }
    }
}

fn parse_spec(input: &str) -> Result<GradedRingSpec, CliError> {
    input.parse().map_err(|error| CliError::Spec {
        input: input.to_string(),
        error,
    })
}

fn parse_degrees(input: &str) -> Result<Vec<u32>, CliError> {
    input
        .split('+')
        .map(|d| d.parse().map_err(|_| CliError::Usage(format!("invalid degree list '{input}'"))))
        .collect()
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(CliError::Output)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(cli: &Cli, envelope: &ReportEnvelope, text: String) -> Result<(), CliError> {
    let mut out = open_output(&cli.output)?;
    if cli.json {
        let json = serde_json::to_string_pretty(envelope).map_err(|e| CliError::Output(e.into()))?;
        writeln!(out, "{json}").map_err(CliError::Output)?;
    } else {
        out.write_all(text.as_bytes()).map_err(CliError::Output)?;
    }
    out.flush().map_err(CliError::Output)
}

fn exit_for(outcome: Outcome) -> u8 {
    match outcome {
        Outcome::Exists => 0,
        Outcome::DoesNotExist => 3,
        Outcome::Inconclusive => 4,
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Series { spec, terms } => {
            let ring = parse_spec(spec)?;
            let mut envelope = ReportEnvelope::new(&[&ring]);
            envelope.series = Some(SeriesReport::new(&ring.hilbert_series(), *terms)?);
            let text = render::series(&ring, envelope.series.as_ref().unwrap());
            emit(cli, &envelope, text)?;
            Ok(0)
        }
        Command::Segre(pair) => {
            let (a, b) = (parse_spec(&pair.a)?, parse_spec(&pair.b)?);
            let ring = SegreRingSpec::ring(a.clone(), b.clone())?;
            let series = segre_hilbert_series(&ring)?;
            let (invariants, _) = segre_invariants(&ring)?;
            let mut envelope = ReportEnvelope::new(&[&a, &b]);
            envelope.series = Some(SeriesReport::new(&series, 12)?);
            envelope.invariants = Some(invariants);
            let text = render::segre(&envelope);
            emit(cli, &envelope, text)?;
            Ok(0)
        }
        Command::Localcoh { pair, twist } => {
            let (a, b) = (parse_spec(&pair.a)?, parse_spec(&pair.b)?);
            let spec = SegreRingSpec::new(a.clone(), b.clone(), *twist)?;
            let table = kunneth_table(&spec);
            let mut envelope = ReportEnvelope::new(&[&a, &b]);
            envelope.twist = Some(*twist);
            envelope.maximal_cohen_macaulay = Some(table.is_maximal_cohen_macaulay());
            envelope.cohomology = Some(cohomology_entries(&table));
            let text = render::localcoh(&envelope, table.ring_dimension());
            emit(cli, &envelope, text)?;
            Ok(0)
        }
        Command::Verdict {
            pair,
            assume_isolated_singularity,
        } => {
            let (mut a, b) = (parse_spec(&pair.a)?, parse_spec(&pair.b)?);
            if *assume_isolated_singularity {
                a = a.with_assumption(Assumption::IsolatedSingularity);
            }
            let ring = SegreRingSpec::ring(a.clone(), b.clone())?;
            let (invariants, table) = segre_invariants(&ring)?;
            let rank_one = rank_one_verdict(&a, &b)?;
            let very_small = very_small_from(&a, &b, &invariants)?;
            let code = exit_for(very_small.outcome);
            let mut envelope = ReportEnvelope::new(&[&a, &b]);
            envelope.invariants = Some(invariants);
            envelope.cohomology = Some(cohomology_entries(&table));
            envelope.verdicts = vec![rank_one, very_small];
            let text = render::verdict(&envelope);
            emit(cli, &envelope, text)?;
            Ok(code)
        }
        Command::Sweep(args) => {
            let degree_rule = match &args.degrees {
                Some(list) => DegreeRule::Fixed(parse_degrees(list)?),
                None => DegreeRule::Offsets(args.degree_offsets.clone()),
            };
            let output_format = match (args.format, cli.json) {
                (Some(format), _) => format,
                (None, true) => OutputFormat::Json,
                (None, false) => OutputFormat::Text,
            };
            let config = SweepConfig {
                n_min: args.n_min,
                n_max: args.n_max,
                degree_rule,
                h_max: args.h_max,
                factor_b: parse_spec(&args.b)?,
                assume_isolated: !args.no_assume_isolated,
                theorem_mode: args.theorem_mode,
                output_format,
            };
            config.validate()?;
            sweep::run(&config, open_output(&cli.output)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            e.report();
            ExitCode::from(e.exit_code())
        }
    }
}
