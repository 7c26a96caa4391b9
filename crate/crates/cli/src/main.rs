//! `semitotal` command-line tool.
//!
//! Exit codes: 0 success, 1 negative answer (`check`, `seo verify`),
//! 2 bad input or arguments, 3 not strongly chordal, 4 invalid SEO,
//! 5 too large for the exhaustive oracle, 6 internal error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use semitotal::bench;
use semitotal::generators::{Density, Family, GenSpec};
use semitotal::{
    find_seo, parse_edge_list, parse_id_list, report, semitotal_violation, solve_with, Graph,
    OracleError, OrderingError, SeoOrdering, SolveError, SolveOptions, VertexSet,
};

const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_STRONGLY_CHORDAL: u8 = 3;
const EXIT_BAD_SEO: u8 = 4;
const EXIT_TOO_LARGE: u8 = 5;
const EXIT_INTERNAL: u8 = 6;

#[derive(Parser)]
#[command(
    name = "semitotal",
    version,
    about = "Minimum semitotal domination on strongly chordal graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a minimum semitotal dominating set.
    Solve {
        graph: PathBuf,
        /// Strong elimination ordering to use instead of computing one.
        #[arg(long)]
        seo: Option<PathBuf>,
        /// Print one line per iteration after the result.
        #[arg(long)]
        trace: bool,
    },
    /// Check whether a vertex set is semitotal dominating.
    Check {
        graph: PathBuf,
        /// File with the set, or the ids inline ("2 4 6").
        set: String,
    },
    /// Find or verify a strong elimination ordering.
    #[command(subcommand)]
    Seo(SeoCommand),
    /// Exact γ, γ_t2 and γ_t by exhaustive search (n <= 24).
    Oracle { graph: PathBuf },
    /// Generate a strongly chordal graph as an edge list.
    Gen {
        family: Family,
        n: usize,
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        density: DensityArgs,
    },
    /// Time ordering and solving over a list of sizes; writes CSV.
    Bench {
        family: Family,
        /// Comma-separated sizes, e.g. 10000,20000,40000.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        density: DensityArgs,
    },
}

#[derive(Subcommand)]
enum SeoCommand {
    /// Print a strong elimination ordering, or exit 3.
    Find { graph: PathBuf },
    /// Exit 0 if the ordering is strong, 1 if not.
    Verify {
        graph: PathBuf,
        /// File with the ordering, or the ids inline ("1 4 2 3").
        order: String,
    },
}

#[derive(Args)]
struct DensityArgs {
    /// Largest block size (block graphs).
    #[arg(long)]
    max_clique: Option<usize>,
    /// Interval length scale; m is roughly scale * n (interval graphs).
    #[arg(long)]
    scale: Option<f64>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_edge_list(&read(path)?)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

/// A path if one exists, otherwise the argument itself.
fn file_or_inline(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        read(path)
    } else {
        Ok(arg.to_string())
    }
}

fn ordering_failure(e: OrderingError) -> Failure {
    match e {
        OrderingError::NotStronglyChordal => Failure::new(EXIT_NOT_STRONGLY_CHORDAL, e.to_string()),
        _ => Failure::new(EXIT_BAD_SEO, e.to_string()),
    }
}

fn read_order(g: &Graph, text: &str) -> Result<Vec<usize>, Failure> {
    parse_id_list(text, g.n()).map_err(|e| Failure::new(EXIT_BAD_SEO, format!("ordering: {e}")))
}

fn solve_cmd(graph: &Path, seo: Option<&Path>, trace: bool) -> Outcome {
    let g = load_graph(graph)?;
    let ordering = match seo {
        Some(path) => {
            let order = read_order(&g, &read(path)?)?;
            SeoOrdering::verified(&g, order).map_err(|e| match e {
                OrderingError::NotAnSeo => Failure::new(
                    EXIT_BAD_SEO,
                    format!("{}: not a strong elimination ordering", path.display()),
                ),
                other => ordering_failure(other),
            })?
        }
        None => find_seo(&g).map_err(ordering_failure)?,
    };
    let opts = SolveOptions {
        trace,
        ..SolveOptions::default()
    };
    let res = solve_with(&g, &ordering, opts).map_err(|e| match e {
        SolveError::TooSmall(_) | SolveError::DisconnectedInput => {
            Failure::new(EXIT_INPUT, e.to_string())
        }
        SolveError::UnverifiedOrdering => Failure::new(EXIT_BAD_SEO, e.to_string()),
        SolveError::Ordering(e) => ordering_failure(e),
        SolveError::InvariantViolated { .. } => Failure::new(EXIT_INTERNAL, e.to_string()),
    })?;
    let mut out = format!("{}\n{}\n", res.size, res.set.to_line());
    for ev in res.trace.iter().flatten() {
        let _ = writeln!(out, "{ev}");
    }
    print!("{out}");
    Ok(0)
}

fn check_cmd(graph: &Path, set: &str) -> Outcome {
    let g = load_graph(graph)?;
    let set = VertexSet::parse(&file_or_inline(set)?, g.n())
        .map_err(|e| Failure::new(EXIT_INPUT, format!("set: {e}")))?;
    match semitotal_violation(&g, &set) {
        Ok(None) => {
            println!("valid");
            Ok(0)
        }
        Ok(Some(v)) => {
            println!("{v}");
            Ok(EXIT_NO)
        }
        // Only isolated vertices reach here; the set itself already parsed.
        Err(e) => Err(Failure::new(EXIT_INPUT, e.to_string())),
    }
}

fn seo_cmd(cmd: SeoCommand) -> Outcome {
    match cmd {
        SeoCommand::Find { graph } => {
            let g = load_graph(&graph)?;
            let seo = find_seo(&g).map_err(ordering_failure)?;
            println!("{}", seo.to_line());
            Ok(0)
        }
        SeoCommand::Verify { graph, order } => {
            let g = load_graph(&graph)?;
            let order = read_order(&g, &file_or_inline(&order)?)?;
            match semitotal::verify_seo(&g, &order) {
                Ok(true) => {
                    println!("strong elimination ordering");
                    Ok(0)
                }
                Ok(false) => {
                    println!("not a strong elimination ordering");
                    Ok(EXIT_NO)
                }
                Err(e) => Err(ordering_failure(e)),
            }
        }
    }
}

fn oracle_cmd(graph: &Path) -> Outcome {
    let g = load_graph(graph)?;
    let r = report(&g).map_err(|e| match e {
        OracleError::TooLarge(_) => Failure::new(EXIT_TOO_LARGE, e.to_string()),
        OracleError::IsolatedVertex(_) => Failure::new(EXIT_INPUT, e.to_string()),
    })?;
    println!("{} {} {}", r.gamma, r.gamma_t2, r.gamma_t);
    println!("{}", r.gamma_witness.to_line());
    println!("{}", r.gamma_t2_witness.to_line());
    println!("{}", r.gamma_t_witness.to_line());
    Ok(0)
}

fn density(family: Family, args: &DensityArgs) -> Result<Density, Failure> {
    let bad = |msg: &str| Failure::new(EXIT_INPUT, msg.to_string());
    match (family, args.max_clique, args.scale) {
        (_, Some(_), Some(_)) => Err(bad("--max-clique and --scale are mutually exclusive")),
        (Family::Block, Some(k), None) if k >= 2 => Ok(Density::MaxClique(k)),
        (Family::Block, Some(_), None) => Err(bad("--max-clique must be at least 2")),
        (Family::Interval, None, Some(s)) if s.is_finite() && s > 0.0 => Ok(Density::Scale(s)),
        (Family::Interval, None, Some(_)) => Err(bad("--scale must be positive")),
        (_, None, None) => Ok(Density::Default),
        (_, Some(_), None) => Err(bad("--max-clique applies to block graphs only")),
        (_, None, Some(_)) => Err(bad("--scale applies to interval graphs only")),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_size(n: usize) -> Result<(), Failure> {
    if n < 3 {
        return Err(Failure::new(
            EXIT_INPUT,
            format!("n = {n}; at least 3 vertices are required"),
        ));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Solve { graph, seo, trace } => solve_cmd(&graph, seo.as_deref(), trace),
        Command::Check { graph, set } => check_cmd(&graph, &set),
        Command::Seo(cmd) => seo_cmd(cmd),
        Command::Oracle { graph } => oracle_cmd(&graph),
        Command::Gen {
            family,
            n,
            seed,
            out,
            density: d,
        } => {
            check_size(n)?;
            let density = density(family, &d)?;
            let g = GenSpec {
                family,
                n,
                seed,
                density,
            }
            .generate();
            emit(out.as_deref(), &g.to_edge_list())?;
            Ok(0)
        }
        Command::Bench {
            family,
            sizes,
            seed,
            out,
            density: d,
        } => {
            sizes.iter().try_for_each(|&n| check_size(n))?;
            let density = density(family, &d)?;
            let rows = bench::run(family, &sizes, seed, density).map_err(|e| match e {
                bench::BenchError::Ordering { .. } => {
                    Failure::new(EXIT_NOT_STRONGLY_CHORDAL, e.to_string())
                }
                bench::BenchError::Solve { .. } => Failure::new(EXIT_INTERNAL, e.to_string()),
            })?;
            emit(out.as_deref(), &bench::to_csv(&rows))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
