use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};

use stablehit::hitting_laws::HittingLaw;
use stablehit::numerics::{laplace_invert_cdf, DEFAULT_GS_TERMS};
use stablehit::resolvent::StableIndex;
use stablehit::verify::{report_to_csv, report_to_json, Suite, DEFAULT_SAMPLES};

mod eval;
mod sample;

/// Hitting-time laws of symmetric stable Levy processes: evaluate, sample, invert, verify.
#[derive(Parser)]
#[command(name = "stablehit", version)]
struct Cli {
    /// Seed shared by every random stream.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Number of independent streams the draws are split across.
    #[arg(long, global = true, default_value_t = 1)]
    streams: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula on the cartesian product of the given parameter lists.
    #[command(allow_negative_numbers = true)]
    Eval {
        kind: eval::Kind,
        #[command(flatten)]
        grid: Grid,
    },
    /// Draw from a sampler.
    #[command(allow_negative_numbers = true)]
    Sample {
        dist: sample::Dist,
        #[arg(short = 'n', default_value_t = 10)]
        n: usize,
        /// Print count, mean, variance and standard error instead of the draws.
        #[arg(long)]
        summary: bool,
        #[command(flatten)]
        params: sample::Params,
    },
    /// Distribution function P(T < t) of a hitting law by Laplace inversion.
    #[command(allow_negative_numbers = true)]
    Invert {
        kind: HittingLaw,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_GS_TERMS)]
        terms: usize,
    },
    /// Run a verification suite; exit status 0 iff every check passes.
    #[command(allow_negative_numbers = true)]
    Verify {
        suite: Suite,
        /// Stability indices; the suite's defaults when omitted.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<f64>,
        #[arg(short = 'n', long = "n", default_value_t = DEFAULT_SAMPLES)]
        n: usize,
        /// JSON report path; a CSV copy is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Comma-separated parameter lists for `eval`.
#[derive(Args, Default)]
pub struct Grid {
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub r: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub x: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub b: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub beta: Vec<f64>,
}

pub enum Failure {
    Usage(String),
    Numeric(String),
    Io(io::Error),
}

impl From<stablehit::Error> for Failure {
    fn from(e: stablehit::Error) -> Self {
        Failure::Numeric(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

pub type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Eval { kind, grid } => eval::run(kind, &grid, &mut out),
        Command::Sample {
            dist,
            n,
            summary,
            params,
        } => sample::run(dist, &params, n, summary, cli.seed, cli.streams, &mut out),
        Command::Invert {
            kind,
            alpha,
            a,
            t,
            terms,
        } => invert(kind, alpha, a, &t, terms, &mut out),
        Command::Verify {
            suite,
            alpha,
            n,
            out: path,
        } => verify(suite, &alpha, n, cli.seed, path.as_deref(), &mut out),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => code,
        (Err(Failure::Usage(msg)), _) => Cli::command()
            .error(clap::error::ErrorKind::ArgumentConflict, msg)
            .exit(),
        (Err(Failure::Numeric(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        (Err(Failure::Io(e)), _) | (Ok(_), Err(e)) => {
            if e.kind() == io::ErrorKind::BrokenPipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn invert(kind: HittingLaw, alpha: f64, a: f64, ts: &[f64], terms: usize, out: &mut impl Write) -> Outcome {
    let lt = kind.transform(StableIndex::hitting(alpha)?, a)?;
    writeln!(out, "t,cdf,status")?;
    let mut sorted = ts.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut running: f64 = 0.0;
    let mut unstable = false;
    for t in sorted {
        match laplace_invert_cdf(&lt, t, terms) {
            Ok(f) => {
                running = running.max(f);
                writeln!(out, "{t},{running},ok")?;
            }
            Err(e) => {
                unstable = true;
                writeln!(out, "{t},NaN,\"{e}\"")?;
            }
        }
    }
    Ok(if unstable { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn verify(suite: Suite, alphas: &[f64], n: usize, seed: u64, path: Option<&Path>, out: &mut impl Write) -> Outcome {
    let grid = alphas
        .iter()
        .map(|&a| StableIndex::new(a))
        .collect::<stablehit::Result<Vec<_>>>()?;
    let reports = suite.run(&grid, seed, n);
    let csv = report_to_csv(&reports);
    if let Some(path) = path {
        std::fs::write(path, report_to_json(&reports))?;
        std::fs::write(path.with_extension("csv"), &csv)?;
    }
    out.write_all(csv.as_bytes())?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    eprintln!("{suite}: {} checks, {failed} failed", reports.len());
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
