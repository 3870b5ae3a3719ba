//! Command-line surface for the hypervolume toolkit: values,
//! contributions, subset selection, instance generation, a randomized
//! self-verification suite, and a benchmark harness.

mod bench;
mod gen;
mod io;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Parser, Subcommand};

use hvkit::{
    all_contributions, gsemo_default_budget, hssp_exact_2d, hssp_exhaustive,
    hssp_greedy_decremental, hssp_greedy_incremental, hssp_gsemo, hssp_local_search,
    hv_with_algorithm, least_contributor, AlgorithmId, HsspMethod, HsspSolution, HvError,
    ReferencePoint, DEFAULT_GRID_BUDGET, DEFAULT_SUBSET_BUDGET,
};

use crate::gen::GenKind;

/// Environment variable overriding the default cell budget of the
/// counting oracle (used by `--algorithm grid` and by `verify`).
pub const ORACLE_BUDGET_ENV: &str = "HVKIT_ORACLE_BUDGET";

/// A terminal error: a message for the error stream plus the process
/// exit code, per the documented exit-code table.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    /// Unreadable or malformed input (exit 2).
    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(2, message)
    }

    /// Front/reference dimension disagreement (exit 3).
    pub fn dimension(message: impl Into<String>) -> Self {
        Self::new(3, message)
    }

    /// `--point` index outside the front (exit 4).
    pub fn point_index(message: impl Into<String>) -> Self {
        Self::new(4, message)
    }

    /// Selection method cannot run on this input (exit 5).
    pub fn method(message: impl Into<String>) -> Self {
        Self::new(5, message)
    }

    /// Generator could not satisfy the request (exit 6).
    pub fn gen_infeasible(message: impl Into<String>) -> Self {
        Self::new(6, message)
    }

    /// Verification found a disagreement (exit 10).
    pub fn verify(message: impl Into<String>) -> Self {
        Self::new(10, message)
    }

    /// Any other runtime error (exit 1).
    pub fn other(message: impl Into<String>) -> Self {
        Self::new(1, message)
    }
}

#[derive(Parser)]
#[command(
    name = "hvkit",
    version,
    about = "Exact hypervolume indicator toolkit",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the hypervolume of every front in FILE.
    Hv {
        /// Front file: one point per line, '#' comments, blank line
        /// separates fronts.
        file: PathBuf,
        /// Reference point as comma-separated coordinates.
        #[arg(long = "ref", value_name = "R1,...,RD")]
        reference: String,
        /// Algorithm; `auto` dispatches on the dimension.
        #[arg(long, default_value = "auto", value_parser = AlgorithmId::from_str)]
        algorithm: AlgorithmId,
    },
    /// Print hypervolume contributions of front members.
    #[command(group(ArgGroup::new("mode").required(true).args(["point", "all", "least"])))]
    Contrib {
        file: PathBuf,
        #[arg(long = "ref", value_name = "R1,...,RD")]
        reference: String,
        /// Contribution of the member with this 0-based index.
        #[arg(long, value_name = "IDX")]
        point: Option<usize>,
        /// One contribution per member, in input order.
        #[arg(long)]
        all: bool,
        /// Index and value of a least contributor (lowest index on ties).
        #[arg(long)]
        least: bool,
    },
    /// Select a size-k subset maximizing hypervolume.
    Hssp {
        file: PathBuf,
        #[arg(long = "ref", value_name = "R1,...,RD")]
        reference: String,
        /// Subset size.
        #[arg(short)]
        k: usize,
        /// Selection method.
        #[arg(long, value_parser = HsspMethod::from_str,
              value_name = "exact2d|exhaustive|greedy-inc|greedy-dec|ls|gsemo")]
        method: HsspMethod,
        /// Seed for the randomized methods.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Iteration budget for ls/gsemo; defaults scale with the input.
        #[arg(long)]
        iters: Option<u64>,
        /// Append value/optimum when exhaustive search fits the budget.
        #[arg(long)]
        report_ratio: bool,
    },
    /// Generate a mutually nondominated front.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Number of points.
        #[arg(long)]
        n: usize,
        /// Coordinates per point (at least 2).
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        d: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the fast algorithms against the reference oracles.
    Verify {
        /// Cell budget for the counting oracle.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the core operations and emit CSV records.
    Bench {
        #[arg(long, value_enum)]
        suite: bench::Suite,
        /// Front sizes, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Dimensions, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Timed repetitions per configuration.
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// CSV output path (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Hv {
            file,
            reference,
            algorithm,
        } => cmd_hv(&file, &reference, algorithm),
        Command::Contrib {
            file,
            reference,
            point,
            all,
            least,
        } => cmd_contrib(&file, &reference, point, all, least),
        Command::Hssp {
            file,
            reference,
            k,
            method,
            seed,
            iters,
            report_ratio,
        } => cmd_hssp(&file, &reference, k, method, seed, iters, report_ratio),
        Command::Gen {
            kind,
            n,
            d,
            seed,
            out,
        } => cmd_gen(kind, n, d as usize, seed, out.as_deref()),
        Command::Verify { budget, seed } => {
            verify::run(budget.unwrap_or_else(default_grid_budget), seed)
        }
        Command::Bench {
            suite,
            sizes,
            dims,
            reps,
            out,
        } => bench::run(suite, &sizes, &dims, reps, out.as_deref()),
    }
}

/// Grid-oracle budget: the override variable when set, else the
/// library default.
fn default_grid_budget() -> u64 {
    std::env::var(ORACLE_BUDGET_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GRID_BUDGET)
}

/// Library errors raised while evaluating a front, mapped onto the exit
/// codes of the value-printing commands.
fn eval_failure(e: HvError) -> Failure {
    match e {
        HvError::DimensionMismatch { .. }
        | HvError::DimensionTooSmall { .. }
        | HvError::AlgorithmDimensionMismatch { .. } => Failure::dimension(e.to_string()),
        _ => Failure::other(e.to_string()),
    }
}

/// Same mapping for subset selection, where an algorithm/dimension
/// mismatch is a method error rather than an input error.
fn hssp_failure(e: HvError) -> Failure {
    match e {
        HvError::AlgorithmDimensionMismatch { .. } => Failure::method(e.to_string()),
        HvError::DimensionMismatch { .. } | HvError::DimensionTooSmall { .. } => {
            Failure::dimension(e.to_string())
        }
        _ => Failure::other(e.to_string()),
    }
}

fn cmd_hv(file: &Path, reference: &str, algorithm: AlgorithmId) -> Result<(), Failure> {
    let reference = io::parse_reference(reference)?;
    let fronts = io::read_fronts(file)?;
    let budget = default_grid_budget();
    for rows in &fronts {
        let front = io::build_front(rows, &reference)?;
        let result =
            hv_with_algorithm(&front, &reference, algorithm, budget).map_err(eval_failure)?;
        println!("{}", io::fmt17(result.value));
    }
    Ok(())
}

fn cmd_contrib(
    file: &Path,
    reference: &str,
    point: Option<usize>,
    all: bool,
    _least: bool,
) -> Result<(), Failure> {
    let reference = io::parse_reference(reference)?;
    let fronts = io::read_fronts(file)?;
    for rows in &fronts {
        let front = io::build_front(rows, &reference)?;
        if all {
            let table = all_contributions(&front, &reference).map_err(eval_failure)?;
            for &v in &table.values {
                println!("{}", io::fmt17(v));
            }
        } else if let Some(idx) = point {
            let table = all_contributions(&front, &reference).map_err(eval_failure)?;
            let value = table.values.get(idx).copied().ok_or_else(|| {
                Failure::point_index(format!(
                    "--point {idx} is out of range for a front of {} points",
                    table.values.len()
                ))
            })?;
            println!("{}", io::fmt17(value));
        } else {
            let (idx, value) = least_contributor(&front, &reference).map_err(eval_failure)?;
            println!("{idx} {}", io::fmt17(value));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_hssp(
    file: &Path,
    reference: &str,
    k: usize,
    method: HsspMethod,
    seed: u64,
    iters: Option<u64>,
    report_ratio: bool,
) -> Result<(), Failure> {
    let reference = io::parse_reference(reference)?;
    let fronts = io::read_fronts(file)?;
    for rows in &fronts {
        let front = io::build_front(rows, &reference)?;
        let solution = solve_hssp(&front, &reference, k, method, seed, iters)?;
        let indices: Vec<String> = solution.selected.iter().map(|i| i.to_string()).collect();
        println!("{}", indices.join(" "));
        println!("{}", io::fmt17(solution.hypervolume));
        if report_ratio {
            match hssp_exhaustive(&front, &reference, k, DEFAULT_SUBSET_BUDGET) {
                Ok(best) => {
                    let ratio = if best.hypervolume == 0.0 {
                        1.0
                    } else {
                        solution.hypervolume / best.hypervolume
                    };
                    println!("{}", io::fmt17(ratio));
                }
                // Enumeration out of budget: the ratio line is simply absent.
                Err(HvError::BudgetExceeded { .. }) => {}
                Err(e) => return Err(hssp_failure(e)),
            }
        }
    }
    Ok(())
}

fn solve_hssp(
    front: &hvkit::Front,
    reference: &ReferencePoint,
    k: usize,
    method: HsspMethod,
    seed: u64,
    iters: Option<u64>,
) -> Result<HsspSolution, Failure> {
    let n = front.len();
    match method {
        HsspMethod::Exact2d => hssp_exact_2d(front, reference, k),
        HsspMethod::Exhaustive => hssp_exhaustive(front, reference, k, DEFAULT_SUBSET_BUDGET),
        HsspMethod::GreedyIncremental => hssp_greedy_incremental(front, reference, k),
        HsspMethod::GreedyDecremental => hssp_greedy_decremental(front, reference, k),
        HsspMethod::LocalSearch => {
            let budget = iters.unwrap_or(((n * k.max(1)).max(64)) as u64);
            hssp_local_search(front, reference, k, 1, budget, seed)
        }
        HsspMethod::Gsemo => {
            let budget = iters.unwrap_or_else(|| gsemo_default_budget(n, k));
            hssp_gsemo(front, reference, k, budget, seed)
        }
    }
    .map_err(hssp_failure)
}

fn cmd_gen(
    kind: GenKind,
    n: usize,
    d: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let rows = gen::generate(kind, n, d, seed).map_err(Failure::gen_infeasible)?;
    let text = io::format_front(&rows);
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::other(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
