//! `groves`: exact grove and double-dimer computations with JSON output.

mod commands;
mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use groves::Error;

#[derive(Parser)]
#[command(name = "groves", version, about = "Exact connection probabilities for groves and double dimers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Response matrix of a network.
    Response { graph: PathBuf },
    /// Effective resistances between nodes, from a network or response matrix.
    Resistance { input: PathBuf },
    /// Response matrix of the dual network.
    Dual { input: PathBuf },
    /// Normalized probability pû of a tripartite partition.
    GroveProb {
        input: PathBuf,
        /// Contiguous coloring such as `R=1-2,G=3-4,B=5-6`.
        #[arg(long, conflicts_with = "partition", required_unless_present = "partition")]
        colors: Option<String>,
        /// Tripartite partition such as `16|23|45`.
        #[arg(long)]
        partition: Option<String>,
        /// Evaluate through the dual network.
        #[arg(long)]
        via_dual: bool,
    },
    /// Projection of a partition onto planar partitions.
    Project {
        #[arg(long)]
        partition: String,
    },
    /// Both sides of the minor identity for det L with rows A∪C and columns B∪C.
    Minors {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        c: Vec<usize>,
    },
    /// Conductances of the standard graph realizing a response matrix (or the response of a network file).
    Reconstruct { response: PathBuf },
    /// Double-dimer probability of a tripartite pairing.
    DdProb {
        graph: PathBuf,
        #[arg(long)]
        colors: String,
    },
    /// Grove sums by partition, by brute force.
    Enumerate { graph: PathBuf },
    /// Triangle grove count and interior-rooted forest count.
    CarrollSpeyer {
        #[arg(long = "N")]
        n: usize,
    },
    /// Apply an electrical move: `series:V`, `parallel:E,F`, `pendant:V`,
    /// `wye-delta:V` or `delta-wye:E,F,G` (edges 0-based).
    Transform {
        graph: PathBuf,
        #[arg(long = "move")]
        mv: String,
    },
    /// Randomized cross-check of the closed forms against enumeration.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        instances: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Shape(_) | Error::Singular(_) | Error::Precondition(_) | Error::TooLarge(_) => 3,
        Error::Invariant(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(v) => {
            // A closed pipe (`groves ... | head`) is not an error.
            let _ = writeln!(std::io::stdout(), "{v}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
