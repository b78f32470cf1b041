//! `snkit`: scramble number, disjoint scramble number and screewidth of
//! small multigraphs from the command line. Every run prints a JSON report.

mod commands;
mod report;
mod reproduce;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use commands::{default_witness_dir, Ctx};
use report::{run_report, CmdResult, Failure, Inputs, Outcome, EXIT_OK, EXIT_USAGE};
use reproduce::Target;
use snkit::sn_solver::Deadline;
use std::path::PathBuf;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

/// Extra time a cooperative search gets to report its bounds after the
/// deadline before the process gives up on it.
const GRACE: Duration = Duration::from_secs(2);
const WORKER_STACK: usize = 256 << 20;

#[derive(Parser, Debug)]
#[command(
    name = "snkit",
    version,
    about = "Scramble number and screewidth of small multigraphs"
)]
struct Cli {
    /// Worker threads for parallel sweeps (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Wall-clock limit; on expiry the run exits 66 with the known bounds.
    #[arg(long, global = true)]
    timeout_secs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named graph: K, path, cycle, P, K4, P33, C3221, LL6, C, Ctilde, W5, wheel, KminusC.
    Family {
        id: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
        /// Write the graph file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decomposition of C or Ctilde with one edge of a bundle deleted.
    CanonicalDecomp {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        /// Bundle `i` joins vertices `i` and `i + 1 (mod n)`.
        #[arg(long)]
        bundle: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Is the pattern a topological minor of the host? Exit 1 if not.
    Topominor {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        /// Allow the multi-smoothing step too.
        #[arg(long)]
        multi: bool,
    },
    /// Hitting number, egg-cut number and order of a scramble.
    Order {
        #[arg(long)]
        scramble: PathBuf,
    },
    /// Exact screewidth with an optimal decomposition.
    Scw {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_os_t = default_witness_dir())]
        witness_dir: PathBuf,
    },
    /// Validate a tree-cut decomposition and evaluate its width.
    Width {
        #[arg(long)]
        decomp: PathBuf,
        /// Defaults to the graph stored in the decomposition file.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Exact scramble number with a certificate.
    Sn {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_os_t = default_witness_dir())]
        witness_dir: PathBuf,
    },
    /// Exact disjoint scramble number.
    Dsn {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_os_t = default_witness_dir())]
        witness_dir: PathBuf,
    },
    /// Decide sn = 1, sn = 2 or sn >= 3 by forbidden topological minors.
    Classify {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Is the graph k-scramble minimal?
    Minimal {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Exhaustive property sweeps over enumerated graphs. Exit 2 on a violation.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Recompute a published value and compare. Exit 2 on a mismatch.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Every 3-edge-connected graph contains K4, P_{3;3} or C_{3;2,2,1}.
    #[command(name = "corollary-3ec")]
    Corollary3ec {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_mult: u32,
    },
    /// One property over all connected graphs up to the bounds.
    Lemma {
        /// edgeconnect, bridge, restrict, monotone, multi-monotone,
        /// scw-bound, edge-deletion, superset-eggs or egg-cut.
        #[arg(long)]
        name: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_mult: u32,
    },
}

fn dispatch(cmd: Command, ctx: &Ctx) -> CmdResult<Outcome> {
    match cmd {
        Command::Family { id, n, k, out } => commands::family(&id, n, k, out.as_deref()),
        Command::CanonicalDecomp {
            family,
            n,
            k,
            bundle,
            out,
        } => commands::canonical_decomp(&family, Some(n), Some(k), bundle, out.as_deref()),
        Command::Topominor { pattern, host, multi } => commands::topominor(ctx, &pattern, &host, multi),
        Command::Order { scramble } => commands::order(ctx, &scramble),
        Command::Scw {
            graph,
            certify,
            witness_dir,
        } => commands::scw(ctx, &graph, certify, &witness_dir),
        Command::Width { decomp, graph } => commands::width(ctx, &decomp, graph.as_deref()),
        Command::Sn {
            graph,
            certify,
            witness_dir,
        } => commands::sn(ctx, &graph, certify, &witness_dir),
        Command::Dsn {
            graph,
            certify,
            witness_dir,
        } => commands::dsn(ctx, &graph, certify, &witness_dir),
        Command::Classify { graph } => commands::classify(ctx, &graph),
        Command::Minimal { graph, k } => commands::minimal(ctx, &graph, k),
        Command::Verify { what } => match what {
            VerifyCommand::Corollary3ec { max_n, max_mult } => commands::verify_corollary(max_n, max_mult),
            VerifyCommand::Lemma { name, max_n, max_mult } => commands::verify_lemma_cmd(&name, max_n, max_mult),
        },
        Command::Reproduce { target } => reproduce::reproduce(target),
    }
}

/// Runs the command on a worker thread so a run that ignores the deadline
/// can still be abandoned.
fn run_with_limit(cmd: Command, ctx: Ctx, limit: Option<Duration>) -> CmdResult<Outcome> {
    let (tx, rx) = mpsc::channel();
    thread::Builder::new()
        .name("snkit-worker".into())
        .stack_size(WORKER_STACK)
        .spawn(move || {
            let _ = tx.send(dispatch(cmd, &ctx));
        })
        .map_err(|e| Failure::Usage(format!("cannot start worker: {e}")))?;
    match limit {
        None => rx.recv().map_err(|_| Failure::Usage("worker thread panicked".into()))?,
        Some(limit) => match rx.recv_timeout(limit + GRACE) {
            Ok(r) => r,
            Err(mpsc::RecvTimeoutError::Timeout) => Err(Failure::Timeout(None)),
            Err(mpsc::RecvTimeoutError::Disconnected) => Err(Failure::Usage("worker thread panicked".into())),
        },
    }
}

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot configure {t} threads: {e}");
            std::process::exit(EXIT_USAGE);
        }
    }
    let limit = cli.timeout_secs.map(Duration::from_secs);
    let start = Instant::now();
    let inputs = Inputs::default();
    let ctx = Ctx {
        inputs: inputs.clone(),
        deadline: limit.map_or_else(Deadline::none, |l| Deadline::at(start + l)),
    };
    let echo = &argv[1..];
    let code = match run_with_limit(cli.command, ctx, limit) {
        Ok(outcome) => {
            let report = run_report(echo, inputs.digests(), outcome.fields, start.elapsed());
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            outcome.exit
        }
        Err(failure) => {
            if let Failure::Timeout(bounds) = &failure {
                let interval = bounds.map(|(l, u)| vec![l, u]);
                let fields = serde_json::json!({ "timeout": { "interval": interval } });
                let fields = fields.as_object().cloned().unwrap_or_default();
                let report = run_report(echo, inputs.digests(), fields, start.elapsed());
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            }
            eprintln!("error: {}", failure.message());
            failure.exit_code()
        }
    };
    std::process::exit(code);
}
