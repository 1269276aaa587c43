use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use drgt_core::pipeline::{self, Session};
use drgt_core::report::Report;
use drgt_core::triality::{TrialityConfig, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "drgt", version, about = "Derangement and coverage computations for transitive group actions")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Directory for the chain and orbit cache.
    #[arg(long, global = true, default_value = "drgt-cache")]
    cache_dir: PathBuf,
    /// Skip reading and writing the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Memory budget in MiB for the large orbit table.
    #[arg(long, global = true)]
    mem_budget: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Keep only keys and Schreier links for the orbit, re-deriving points on demand.
    #[arg(long, global = true)]
    low_mem: bool,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and certify the group, its Sylow-13 action, H and the class table.
    Build,
    /// Check that every element of the coset Hx is conjugate into H.
    VerifyTheorem {
        /// Word in a, b for x (default: the bundled word).
        #[arg(long)]
        word: Option<String>,
    },
    /// H-orbits on the Sylow points and which double cosets are covered.
    Census {
        #[arg(long)]
        word: Option<String>,
    },
    /// Normalizer of <c> and its elements inverting c with s*z conjugate to s.
    RemarkB {
        #[arg(long)]
        word: Option<String>,
    },
    /// Class table of elements of orders 2 and 4.
    Classes,
    /// PSL(3,4) on 4032 points: connected orbital graph without a derangement.
    RemarkC {
        /// Test every suborbit instead of stopping at the first pair.
        #[arg(long)]
        sweep: bool,
    },
    /// Fixed-point-count-not-one sweeps over PSL(3,4)/4032 and the bundled corpus.
    RemarkD,
    /// Orbital graphs of a permutation group file.
    Orbital { file: PathBuf, alpha: u32 },
    /// Derangement mapping alpha to beta.
    Derangement { file: PathBuf, alpha: u32, beta: u32 },
    /// Element mapping alpha to beta whose fixed-point count is not 1 (all beta when omitted).
    Fixne1 {
        file: PathBuf,
        #[arg(default_value_t = 0)]
        alpha: u32,
        beta: Option<u32>,
    },
}

fn open_session(cli: &Cli) -> Result<Session> {
    let cfg = TrialityConfig { seed: cli.seed, store_payloads: !cli.low_mem, ..Default::default() };
    let dir = (!cli.no_cache).then_some(cli.cache_dir.as_path());
    Ok(Session::open(cfg, dir, cli.mem_budget)?)
}

fn run(cli: &Cli) -> Result<Report> {
    let report = match &cli.command {
        Command::Build => pipeline::build_report(&mut open_session(cli)?)?,
        Command::VerifyTheorem { word } => pipeline::theorem_report(&mut open_session(cli)?, word.as_deref())?,
        Command::Census { word } => pipeline::census_report(&mut open_session(cli)?, word.as_deref())?,
        Command::RemarkB { word } => pipeline::remark_b_report(&mut open_session(cli)?, word.as_deref())?,
        Command::Classes => pipeline::classes_report(&mut open_session(cli)?)?,
        Command::RemarkC { sweep } => pipeline::remark_c_report(cli.seed, *sweep)?,
        Command::RemarkD => pipeline::remark_d_report(cli.seed)?,
        Command::Orbital { file, alpha } => pipeline::orbital_report(file, *alpha, cli.seed)
            .with_context(|| format!("reading {}", file.display()))?,
        Command::Derangement { file, alpha, beta } => pipeline::derangement_report(file, *alpha, *beta, cli.seed)
            .with_context(|| format!("reading {}", file.display()))?,
        Command::Fixne1 { file, alpha, beta } => pipeline::fixne1_report(file, *alpha, *beta, cli.seed)
            .with_context(|| format!("reading {}", file.display()))?,
    };
    Ok(report)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
