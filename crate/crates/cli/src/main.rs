//! Command-line surface: compute metrics for given inputs, validate edge
//! sets, run verification campaigns, and benchmark determinant routes.
//!
//! Exit codes: 0 success, 1 malformed input or configuration, 2 domain
//! rejection (not circumscriptible / not realizable / degenerate), 3 sampling
//! budget exhaustion, 4 verification violation or oracle failure.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use edgetangent::scalar::sign_pow;
use edgetangent::structured::{cayley_menger, squared_edge_det_closed, squared_edge_matrix};
use edgetangent::verify::{instance_seed, CampaignConfig};
use edgetangent::{
    random_radii, run_campaign, BalloonRadii, EdgeLengthMatrix, MetricsError, Profile, Rational,
    Scalar, SimplexError, SimplexMetrics, VerifyError,
};

use input::{load_input, parse_dims, ParsedInput};
use output::{
    bench_csv, bench_json, campaign_csv, error_document, metrics_document, to_key_value_csv,
    validate_document, BenchRow, ValidateDocument,
};

const DEFAULT_SEED: u64 = 42;
const SEED_ENV: &str = "EDGETANGENT_SEED";

#[derive(Debug)]
pub struct CliError {
    kind: &'static str,
    detail: String,
    code: u8,
}

impl CliError {
    fn new(kind: &'static str, code: u8, detail: impl Into<String>) -> Self {
        Self {
            kind,
            detail: detail.into(),
            code,
        }
    }

    pub fn malformed(detail: impl Into<String>) -> Self {
        Self::new("malformed-input", 1, detail)
    }

    pub fn not_circumscriptible(detail: impl Into<String>) -> Self {
        Self::new("not-circumscriptible", 2, detail)
    }

    pub fn not_realizable(detail: impl Into<String>) -> Self {
        Self::new("not-realizable", 2, detail)
    }

    pub fn degenerate(detail: impl Into<String>) -> Self {
        Self::new("degenerate", 2, detail)
    }

    pub fn budget(detail: impl Into<String>) -> Self {
        Self::new("sampling-budget-exhausted", 3, detail)
    }

    pub fn oracle(detail: impl Into<String>) -> Self {
        Self::new("oracle-failure", 4, detail)
    }
}

impl From<SimplexError> for CliError {
    fn from(err: SimplexError) -> Self {
        match err {
            SimplexError::NotCircumscriptible(f) => Self::not_circumscriptible(f.to_string()),
            other => Self::malformed(other.to_string()),
        }
    }
}

impl From<MetricsError> for CliError {
    fn from(err: MetricsError) -> Self {
        match err {
            MetricsError::NotRealizable { .. } => Self::not_realizable(err.to_string()),
            MetricsError::DegenerateBorder
            | MetricsError::DegenerateSimplex(_)
            | MetricsError::NegativeOg { .. } => Self::degenerate(err.to_string()),
            MetricsError::Simplex(e) => e.into(),
            MetricsError::Numeric(e) => Self::malformed(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(err: VerifyError) -> Self {
        match err {
            VerifyError::SamplingBudget { .. } => Self::budget(err.to_string()),
            VerifyError::BadConfig(_) | VerifyError::UnsupportedProfile { .. } => {
                Self::malformed(err.to_string())
            }
            VerifyError::Metrics(e) => e.into(),
            VerifyError::Simplex(e) => e.into(),
            VerifyError::NotEmbeddable { .. }
            | VerifyError::DistanceMismatch { .. }
            | VerifyError::SingularSystem => Self::oracle(err.to_string()),
            VerifyError::Numeric(e) => Self::malformed(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "edgetangent",
    version,
    about = "Metric invariants of edge-tangent (circumscriptible) n-simplices"
)]
struct Cli {
    /// Arithmetic backend: exact rationals or IEEE doubles.
    #[arg(long, global = true, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Relative tolerance for float-backend comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every metric invariant of one simplex.
    Metrics {
        /// Inline balloon radii, e.g. "1,2,3" or "1/2,1,3/2".
        #[arg(long)]
        radii: Option<String>,
        /// JSON file with {"n": .., "edges": [[..], ..]}.
        #[arg(long)]
        edges: Option<PathBuf>,
        /// JSON file with either "radii" or "edges".
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Validate an edge set: circumscriptibility, recovered radii,
    /// realizability margin and Cayley-Menger sign.
    Validate {
        /// JSON file with {"n": .., "edges": [[..], ..]}.
        #[arg(long)]
        edges: Option<PathBuf>,
        /// JSON file with either "radii" or "edges".
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run a randomized verification campaign over the inequality chain and
    /// the proof-internal bounds.
    Verify {
        /// Dimensions, e.g. "3", "2..8" (inclusive) or "2,4,6".
        #[arg(long, default_value = "2..8")]
        n: String,
        /// Instances per dimension.
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Campaign seed; defaults to $EDGETANGENT_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
        /// Sampling profile: uniform, log-uniform or near-boundary.
        #[arg(long, default_value = "uniform")]
        profile: String,
        /// Worker threads; summaries are identical for any value.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Skip the per-instance multi-route cross-check.
        #[arg(long)]
        no_cross_check: bool,
    },
    /// Benchmark the closed-form determinant against fraction-free
    /// elimination on the squared-edge matrix (always exact backend).
    Bench {
        /// Dimensions, e.g. "2..8".
        #[arg(long, default_value = "2..8")]
        n: String,
        /// Timing repetitions per route.
        #[arg(long, default_value_t = 25)]
        reps: u32,
        /// Instance seed; defaults to $EDGETANGENT_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| CliError::malformed(format!("bad {SEED_ENV} value {text:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn print_document(doc: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(doc).expect("valid JSON")),
        Format::Csv => print!("{}", to_key_value_csv(doc)),
    }
}

fn cmd_metrics<S: Scalar>(
    radii: Option<&str>,
    edges: Option<&PathBuf>,
    file: Option<&PathBuf>,
    format: Format,
) -> Result<u8, CliError> {
    let radii =
        match load_input::<S>(radii, edges.map(|p| p.as_path()), file.map(|p| p.as_path()))? {
            ParsedInput::Radii(r) => r,
            ParsedInput::Edges(e) => e.balloon_radii()?,
        };
    let margin = radii.realizability().margin;
    let metrics = SimplexMetrics::compute(&radii)?;
    print_document(&metrics_document(&radii, &margin, &metrics), format);
    Ok(0)
}

fn cmd_validate<S: Scalar>(
    edges: Option<&PathBuf>,
    file: Option<&PathBuf>,
    format: Format,
) -> Result<u8, CliError> {
    let edges: EdgeLengthMatrix<S> =
        match load_input::<S>(None, edges.map(|p| p.as_path()), file.map(|p| p.as_path()))? {
            ParsedInput::Edges(e) => e,
            ParsedInput::Radii(r) => r.edge_lengths(),
        };
    let dim = edges.dim();
    let cm_det = cayley_menger(&edges).determinant();
    let oriented = sign_pow::<S>(dim + 1) * cm_det.clone();
    let cm_sign = if oriented.is_positive() {
        1
    } else if oriented.is_zero() {
        0
    } else {
        -1
    };

    let doc = match edges.balloon_radii() {
        Ok(radii) => {
            let realizability = radii.realizability();
            ValidateDocument {
                dim,
                circumscriptible: true,
                radii: Some(radii.radii().to_vec()),
                diagnostic: None,
                realizable: Some(realizability.realizable),
                margin: Some(realizability.margin),
                cm_det,
                cm_sign,
            }
        }
        Err(SimplexError::NotCircumscriptible(failure)) => ValidateDocument {
            dim,
            circumscriptible: false,
            radii: None,
            diagnostic: Some(failure.to_string()),
            realizable: None,
            margin: None,
            cm_det,
            cm_sign,
        },
        Err(other) => return Err(other.into()),
    };

    let verdict_ok = doc.circumscriptible && doc.realizable == Some(true);
    print_document(&validate_document(&doc), format);
    Ok(if verdict_ok { 0 } else { 2 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify<S: Scalar>(
    dims: &str,
    count: u64,
    seed: Option<u64>,
    profile: &str,
    workers: usize,
    no_cross_check: bool,
    tolerance: f64,
    format: Format,
) -> Result<u8, CliError> {
    let cfg = CampaignConfig {
        dims: parse_dims(dims)?,
        count,
        seed: resolve_seed(seed)?,
        profile: profile.parse::<Profile>().map_err(CliError::malformed)?,
        workers,
        cross_check: !no_cross_check,
        tolerance,
    };
    let summary = run_campaign::<S>(&cfg)?;
    let violations = summary.violations;
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&summary).expect("valid JSON")
        ),
        Format::Csv => print!("{}", campaign_csv(&summary)),
    }
    Ok(if violations > 0 { 4 } else { 0 })
}

fn median(mut samples: Vec<u128>) -> u128 {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

fn cmd_bench(dims: &str, reps: u32, seed: Option<u64>, format: Format) -> Result<u8, CliError> {
    let dims = parse_dims(dims)?;
    let seed = resolve_seed(seed)?;
    let reps = reps.max(1);
    let mut rows = Vec::new();
    for &dim in &dims {
        let radii: BalloonRadii<Rational> =
            random_radii(dim, instance_seed(seed, dim, 0), Profile::Uniform)
                .map_err(CliError::from)?
                .radii;
        let matrix = squared_edge_matrix(&radii);

        let mut elim_det = None;
        let mut elim_bits = 0u64;
        let mut elim_times = Vec::with_capacity(reps as usize);
        for _ in 0..reps {
            let start = Instant::now();
            let (det, bits) = matrix.determinant_with_bits();
            elim_times.push(start.elapsed().as_nanos());
            elim_bits = bits;
            elim_det = Some(det);
        }

        let mut closed_det = None;
        let mut closed_times = Vec::with_capacity(reps as usize);
        for _ in 0..reps {
            let start = Instant::now();
            let det = squared_edge_det_closed(&radii);
            closed_times.push(start.elapsed().as_nanos());
            closed_det = Some(det);
        }
        let closed_det = closed_det.expect("reps >= 1");
        let closed_bits = radii
            .symmetric_sums()
            .discriminant()
            .max_bits()
            .max(closed_det.max_bits());

        rows.push(BenchRow {
            n: dim,
            route: "closed",
            median_ns: median(closed_times),
            max_bits: closed_bits,
            det: closed_det.to_string(),
        });
        rows.push(BenchRow {
            n: dim,
            route: "elimination",
            median_ns: median(elim_times),
            max_bits: elim_bits,
            det: elim_det.expect("reps >= 1").to_string(),
        });
    }
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&bench_json(&rows)).expect("valid JSON")
        ),
        Format::Csv => print!("{}", bench_csv(&rows)),
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if !cli.tolerance.is_finite() || cli.tolerance <= 0.0 {
        return Err(CliError::malformed("tolerance must be positive"));
    }
    match &cli.command {
        Command::Metrics {
            radii,
            edges,
            input,
        } => match cli.backend {
            Backend::Exact => cmd_metrics::<Rational>(
                radii.as_deref(),
                edges.as_ref(),
                input.as_ref(),
                cli.format,
            ),
            Backend::Float => {
                cmd_metrics::<f64>(radii.as_deref(), edges.as_ref(), input.as_ref(), cli.format)
            }
        },
        Command::Validate { edges, input } => match cli.backend {
            Backend::Exact => cmd_validate::<Rational>(edges.as_ref(), input.as_ref(), cli.format),
            Backend::Float => cmd_validate::<f64>(edges.as_ref(), input.as_ref(), cli.format),
        },
        Command::Verify {
            n,
            count,
            seed,
            profile,
            workers,
            no_cross_check,
        } => match cli.backend {
            Backend::Exact => cmd_verify::<Rational>(
                n,
                *count,
                *seed,
                profile,
                *workers,
                *no_cross_check,
                cli.tolerance,
                cli.format,
            ),
            Backend::Float => cmd_verify::<f64>(
                n,
                *count,
                *seed,
                profile,
                *workers,
                *no_cross_check,
                cli.tolerance,
                cli.format,
            ),
        },
        Command::Bench { n, reps, seed } => cmd_bench(n, *reps, *seed, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            print_document(&error_document(err.kind, &err.detail), format);
            eprintln!("error ({}): {}", err.kind, err.detail);
            ExitCode::from(err.code)
        }
    }
}
