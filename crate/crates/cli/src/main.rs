//! `qsep` command-line tool.
//!
//! Exit codes: 0 success, 2 usage, 3 validation, 4 parse, 5 internal or I/O.
//! Verdicts never affect the exit code.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qsep::{
    analyze_all, check_partial_separability, construct_inseparable, ghz_density, load_matrix, maximally_mixed,
    parse_partition, random_density, reduce, to_qdm_string, tripartite_example, werner, write_report, write_verdict,
    CriteriaError, DensityMatrix, Partition, QdmError, ReportFormat, TripartiteExample, DEFAULT_PPT_TOL,
    DEFAULT_STATE_TOL,
};

#[derive(Parser)]
#[command(name = "qsep", version, about = "Partial-separability analysis of multi-qubit density matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a density matrix as QDM.
    Gen {
        kind: StateKind,
        /// Mixing parameter in [0, 1] for werner, prime, and doubleprime.
        #[arg(long)]
        x: Option<f64>,
        /// Qubit count for ghz, random, and mixed.
        #[arg(long)]
        n: Option<usize>,
        /// Seed for random.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a state to two qubits along a partition.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        partition: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the PPT test to the reduction along one partition.
    Check {
        input: PathBuf,
        #[arg(long)]
        partition: String,
        #[arg(long, default_value_t = DEFAULT_PPT_TOL, value_parser = positive_tolerance)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check every bipartition of a state.
    Analyze {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PPT_TOL, value_parser = positive_tolerance)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build a three-qubit state whose B|AC reduction is a given two-qubit mixture.
    Construct {
        /// Two-qubit QDM file; repeat once per weight.
        #[arg(long = "sigma", required = true)]
        sigmas: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        weights: Vec<f64>,
        #[arg(long)]
        layout: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StateKind {
    Werner,
    Prime,
    Doubleprime,
    Ghz,
    Random,
    Mixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
        }
    }
}

fn positive_tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        Ok(_) => Err("tolerance must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Validation(String),
    Parse(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Parse(_) => 4,
            CliError::Internal(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Parse(m) | CliError::Internal(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn load(path: &Path) -> Result<DensityMatrix, CliError> {
    load_matrix(path, DEFAULT_STATE_TOL).map_err(|e| {
        let msg = format!("{}: {e}", path.display());
        match e {
            QdmError::Parse { .. } => CliError::Parse(msg),
            QdmError::Validation(_) => CliError::Validation(msg),
            QdmError::Io(_) => CliError::Internal(msg),
        }
    })
}

fn criteria_error(e: CriteriaError) -> CliError {
    match e {
        CriteriaError::InvalidTolerance { .. } | CriteriaError::Partition(_) => usage(e),
        CriteriaError::DimensionMismatch { .. } | CriteriaError::Reduction(_) => CliError::Internal(e.to_string()),
    }
}

fn require<T>(value: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("`gen {kind}` requires --{flag}")))
}

/// Qubit count implied by a partition string such as `B|AC` or `2|1,3`.
fn partition_qubits(text: &str) -> usize {
    if text.chars().any(|c| c.is_ascii_alphabetic()) {
        text.chars().filter(|c| c.is_ascii_alphabetic()).count()
    } else {
        text.split(['|', ',']).count()
    }
}

fn generate(kind: StateKind, x: Option<f64>, n: Option<usize>, seed: u64) -> Result<DensityMatrix, CliError> {
    let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    let rho = match kind {
        StateKind::Werner => werner(require(x, "x", &name)?),
        StateKind::Prime => tripartite_example(TripartiteExample::Prime, require(x, "x", &name)?),
        StateKind::Doubleprime => tripartite_example(TripartiteExample::DoublePrime, require(x, "x", &name)?),
        StateKind::Ghz => ghz_density(require(n, "n", &name)?),
        StateKind::Random => random_density(require(n, "n", &name)?, seed),
        StateKind::Mixed => maximally_mixed(require(n, "n", &name)?),
    };
    rho.map_err(usage)
}

fn run(cli: Cli) -> Result<(String, Option<PathBuf>), CliError> {
    match cli.command {
        Command::Gen { kind, x, n, seed, out } => Ok((to_qdm_string(&generate(kind, x, n, seed)?), out)),
        Command::Reduce { input, partition, out } => {
            let rho = load(&input)?;
            let p = parse_partition(&partition, rho.num_qubits()).map_err(usage)?;
            let reduced = reduce(&rho, &p).map_err(|e| CliError::Internal(e.to_string()))?;
            Ok((to_qdm_string(&reduced), out))
        }
        Command::Check { input, partition, tol, format } => {
            let rho = load(&input)?;
            let p = parse_partition(&partition, rho.num_qubits()).map_err(usage)?;
            let verdict = check_partial_separability(&rho, &p, tol).map_err(criteria_error)?;
            Ok((write_verdict(&verdict, format.into()), None))
        }
        Command::Analyze { input, tol, format } => {
            let rho = load(&input)?;
            let report = analyze_all(&rho, tol).map_err(criteria_error)?.without_reductions();
            Ok((write_report(&report, format.into()), None))
        }
        Command::Construct { sigmas, weights, layout, out } => {
            let p: Partition = parse_partition(&layout, partition_qubits(&layout)).map_err(usage)?;
            let states = sigmas.iter().map(|s| load(s)).collect::<Result<Vec<_>, _>>()?;
            let rho = construct_inseparable(&states, &weights, &p).map_err(usage)?;
            Ok((to_qdm_string(&rho), out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli).and_then(|(text, out)| match out {
        Some(path) => fs::write(&path, text).map_err(|e| CliError::Internal(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
