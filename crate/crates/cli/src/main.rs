use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use linkforge::{Axis, Edge};
use linkforge_cli::commands::{self, Input, RewriteOp};
use linkforge_cli::RunReport;

#[derive(Parser)]
#[command(name = "linkforge", version, about = "Linked cycles and knotted cycles in spatial complete graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Common {
    /// Report format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Projection axis used when the input is an embedding.
    #[arg(long, default_value = "z", value_parser = parse_axis)]
    axis: Axis,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random generic linear embedding of K_n.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Coordinates are drawn from [-bound, bound].
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Compute lk of two cycles or a2 of one cycle.
    Invariant {
        /// lk or a2.
        which: String,
        /// Cycles as vertex lists, e.g. "0,1,2;3,4,5".
        cycles: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite on random instances: cg6, cg7, fnp10 or eq2.
    Verify {
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a link with lk >= bound or a knot with |a2| >= bound.
    Find {
        /// link or knot.
        target: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        bound: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Rewrite a diagram by inserting half twists or trefoils.
    Rewrite {
        #[command(subcommand)]
        op: Rewrite,
    },
}

#[derive(Subcommand)]
enum Rewrite {
    /// Insert `count` half twists between edges e and f.
    Twists {
        #[arg(long, value_parser = parse_edge)]
        e: Edge,
        #[arg(long, value_parser = parse_edge)]
        f: Edge,
        #[arg(long)]
        count: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Insert `count` right-handed trefoils on one edge ("u-v") or on every edge ("all").
    Trefoils {
        #[arg(long, default_value = "all")]
        edge: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse().map_err(|e: linkforge::Error| e.to_string())
}

fn parse_edge(s: &str) -> Result<Edge, String> {
    s.parse().map_err(|e: linkforge::Error| e.to_string())
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("LINKFORGE_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("LINKFORGE_THREADS={v:?}"))?;
        if n == 0 {
            bail!("LINKFORGE_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// Runs the command. Returns the common options and, for commands that
/// produce a file, its contents.
fn run(command: Command, report: &mut RunReport) -> (Common, anyhow::Result<Option<String>>) {
    match command {
        Command::Gen { n, seed, bound, common } => {
            let r = commands::gen(report, n, bound, seed, common.axis).map(Some);
            (common, r)
        }
        Command::Invariant { which, cycles, input, common } => {
            let r = Input::load(&input).and_then(|i| commands::invariant(report, &i, &which, &cycles, common.axis));
            (common, r.map(|_| None))
        }
        Command::Verify { suite, trials, seed, bound, common } => {
            let trials = trials.unwrap_or_else(|| commands::default_trials(&suite));
            (common, commands::verify(report, &suite, trials, seed, bound).map(|_| None))
        }
        Command::Find { target, input, bound, common } => {
            let r = Input::load(&input)
                .and_then(|i| i.diagram(common.axis))
                .and_then(|d| commands::find(report, &d, &target, bound));
            (common, r.map(|_| None))
        }
        Command::Rewrite { op } => {
            let (input, common, op) = match op {
                Rewrite::Twists { e, f, count, input, common } => (input, common, Ok(RewriteOp::Twists { e, f, count })),
                Rewrite::Trefoils { edge, count, input, common } => {
                    let edges = if edge == "all" { Ok(None) } else { parse_edge(&edge).map(|e| Some(vec![e])) };
                    (input, common, edges.map(|edges| RewriteOp::Trefoils { edges, count }).map_err(anyhow::Error::msg))
                }
            };
            let r = op.and_then(|op| {
                let d = Input::load(&input)?.diagram(common.axis)?;
                commands::rewrite(report, &d, &op)
            });
            (common, r.map(Some))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = RunReport::new(std::env::args().skip(1).collect());
    let start = Instant::now();
    let (common, result) = match init_threads() {
        Ok(()) => run(cli.command, &mut report),
        Err(e) => {
            report.fail(e.to_string());
            (Common { format: Format::Json, out: None, axis: Axis::Z }, Ok(None))
        }
    };
    report.timing.elapsed_ms = start.elapsed().as_millis() as u64;

    let mut code = ExitCode::SUCCESS;
    let artifact = match result {
        Ok(a) => a,
        Err(e) => {
            report.fail(format!("{e:#}"));
            None
        }
    };
    let rendered = match common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match (&artifact, &common.out) {
        (Some(text), Some(path)) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
            print!("{rendered}");
        }
        (Some(text), None) => print!("{text}"),
        (None, Some(path)) => {
            if let Err(e) = fs::write(path, &rendered) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        (None, None) => print!("{rendered}"),
    }
    if report.error.is_some() {
        eprintln!("error: {}", report.error.as_deref().unwrap_or_default());
        code = ExitCode::from(2);
    } else if !report.passed {
        code = ExitCode::from(1);
    }
    code
}
