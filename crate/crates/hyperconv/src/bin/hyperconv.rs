//! Thin binary over [`hyperconv::cli`]: argument parsing and output
//! placement only.  All command logic lives in the library.

use clap::{Args, Parser, Subcommand};
use hyperconv::cli::{run, CommandKind, Outcome, RunConfig, SpecSource};
use hyperconv::report::Format;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "hyperconv",
    about = "Exact convolution engine for discrete semiconvos and hypergroups",
    after_help = "Set HYPERCONV_THREADS to cap search parallelism; reports are \
                  byte-identical at any thread count."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Construction or experiment spec file (JSON)
    #[arg(long, value_name = "FILE", conflicts_with = "inline", global = true)]
    spec: Option<PathBuf>,
    /// Spec given directly on the command line
    #[arg(long, value_name = "JSON", global = true)]
    inline: Option<String>,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_name = "json|csv|md", default_value = "json", global = true)]
    format: String,
    /// Window bound override (Z+ carriers)
    #[arg(long, value_name = "N", global = true)]
    window: Option<u64>,
    /// Depth override for experiments
    #[arg(long, value_name = "D", global = true)]
    depth: Option<usize>,
    /// Seed for randomized sweeps; recorded in every report
    #[arg(long, value_name = "S", default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a construction and validate it on a window
    Construct(Common),
    /// Run the full axiom sweep on a window
    Verify(Common),
    /// Convolve a sequence of point masses exactly
    Convolve(Common),
    /// Run a coloring experiment: fixed-sequence check or bounded search
    Experiment(Common),
    /// Re-run a named scenario with its canonical parameters
    Reproduce {
        /// cp2-mod3 | cp2-alpha | orbit-cp1 | quotient-table |
        /// linearization-match | recurrent | orbit-bound
        name: String,
        #[command(flatten)]
        common: Common,
    },
}

fn main() {
    let cli = Cli::parse();
    let (kind, common) = match cli.command {
        Cmd::Construct(c) => (CommandKind::Construct, c),
        Cmd::Verify(c) => (CommandKind::Verify, c),
        Cmd::Convolve(c) => (CommandKind::Convolve, c),
        Cmd::Experiment(c) => (CommandKind::Experiment, c),
        Cmd::Reproduce { name, common } => (CommandKind::Reproduce(name), common),
    };
    let Some(format) = Format::parse(&common.format) else {
        eprintln!("unknown format {:?}; expected json, csv, or md", common.format);
        std::process::exit(2);
    };
    let config = RunConfig {
        command: kind,
        spec: match (common.spec, common.inline) {
            (Some(path), _) => Some(SpecSource::Path(path)),
            (None, Some(json)) => Some(SpecSource::Inline(json)),
            (None, None) => None,
        },
        format,
        window: common.window,
        depth: common.depth,
        seed: common.seed,
    };
    let Outcome { text, exit } = run(&config);
    match common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                std::process::exit(2);
            }
        }
        None => print!("{text}"),
    }
    std::process::exit(exit);
}
