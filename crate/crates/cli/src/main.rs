use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::{CliError, Report};

#[derive(Parser)]
#[command(name = "symexp", version, about = "Symmetric Cayley expanders and simply-symmetric codes")]
struct Cli {
    /// Worker threads (falls back to EXPANDER_THREADS, then all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search and certify a Ramanujan Cayley graph on PGL2(q^n)
    BuildLsv {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory for the graph and summary files
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the product graph on the edges of a built LSV graph
    BuildGamma {
        #[arg(long)]
        lsv_file: PathBuf,
        /// Comma-separated elements of C_{q+1}
        #[arg(long = "T", alias = "t", value_delimiter = ',', required = true)]
        t: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that f is an isomorphism from the Cayley graph X onto the product graph
    VerifyProp1 {
        #[command(flatten)]
        source: DatumSource,
        #[arg(long = "T", alias = "t", value_delimiter = ',', required = true)]
        t: Vec<usize>,
    },
    /// Unique-neighbor expansion test on a graph file
    Une {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 2)]
        exhaustive_max: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Code constructions and checks
    #[command(subcommand)]
    Codes(CodesCommand),
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct DatumSource {
    /// Summary JSON written by build-lsv
    #[arg(long)]
    lsv_file: Option<PathBuf>,
    /// Hypercube fixture F2^d with C_d rotating coordinates
    #[arg(long)]
    hypercube: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Exhaustive,
    Bz,
}

#[derive(Clone, Copy, ValueEnum)]
enum ActionKind {
    /// K x| H acting on the orbit code by left translation
    Product,
    /// G x| H acting on the edges of Cay(G, S)
    Full,
}

#[derive(Subcommand)]
enum CodesCommand {
    /// The [79, 40] cyclic code
    B2prime {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The [158, 80] cyclic code
    Bprime {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum distance of a code
    MinDistance {
        /// b2prime, bprime, hamming, or a parity-check file
        #[arg(long)]
        code: String,
        #[arg(long, value_enum, default_value = "bz")]
        algo: Algo,
        /// Codeword budget for Brouwer-Zimmermann
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Maximal weight of a presented constraint
    Density {
        #[arg(long)]
        code: String,
    },
    /// Compare the symmetric Cayley code with the orbit code
    CheckProp51 {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        hypercube: Option<u32>,
        #[arg(long = "T", alias = "t", value_delimiter = ',', required = true)]
        t: Vec<usize>,
        /// Write both codes as parity-check files into this directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariance, transitivity and freeness of a group action on a code
    CheckSymmetry {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        hypercube: Option<u32>,
        #[arg(long = "T", alias = "t", value_delimiter = ',')]
        t: Vec<usize>,
        #[arg(long, value_enum, default_value = "product")]
        action: ActionKind,
        /// Check a cyclic code (b2prime, bprime, hamming) under rotation instead
        #[arg(long)]
        cyclic: Option<String>,
    },
}

fn configure_threads(flag: Option<usize>) -> Result<(), CliError> {
    let env = std::env::var("EXPANDER_THREADS").ok();
    let threads = match (flag, env) {
        (Some(n), _) => Some(n),
        (None, Some(v)) => Some(v.trim().parse().map_err(|_| CliError::usage(format!("EXPANDER_THREADS={v:?} is not a number")))?),
        (None, None) => None,
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::usage("thread count must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Report, CliError> {
    configure_threads(cli.threads)?;
    match cli.command {
        Command::BuildLsv { q, n, seed, out } => commands::build_lsv(q, n, seed, &out),
        Command::BuildGamma { lsv_file, t, out } => commands::build_gamma(&lsv_file, t, &out),
        Command::VerifyProp1 { source, t } => commands::verify_prop1(source.lsv_file.as_deref(), source.hypercube, t),
        Command::Une { graph, alpha, epsilon, exhaustive_max, samples, seed, out } => {
            commands::une(&graph, alpha, epsilon, exhaustive_max, samples, seed, out.as_deref())
        }
        Command::Codes(c) => match c {
            CodesCommand::B2prime { out } => commands::named_code("b2prime", out.as_deref()),
            CodesCommand::Bprime { out } => commands::named_code("bprime", out.as_deref()),
            CodesCommand::MinDistance { code, algo, budget } => commands::min_distance(&code, matches!(algo, Algo::Bz), budget),
            CodesCommand::Density { code } => commands::density(&code),
            CodesCommand::CheckProp51 { q, n, seed, hypercube, t, out } => {
                let src = commands::DatumSpec::new(q, n, seed, hypercube)?;
                commands::check_prop51(src, t, out.as_deref())
            }
            CodesCommand::CheckSymmetry { q, n, seed, hypercube, t, action, cyclic } => match cyclic {
                Some(name) => commands::check_cyclic_symmetry(&name),
                None => {
                    let src = commands::DatumSpec::new(q, n, seed, hypercube)?;
                    commands::check_symmetry(src, t, matches!(action, ActionKind::Full))
                }
            },
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    match run(cli) {
        Ok(report) => {
            report.print(pretty);
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
