use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Debug, Parser)]
#[command(name = "statdim", version, about = "Statistical dimension of graphs by BFS ball growth")]
struct Cli {
    /// Worker threads for ensemble probes (0 = all cores). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Suppress diagnostics on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an n-dimensional hypercube lattice as an edge list.
    GenHypercube {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        side: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a graph against the closed-form hypercube counts and degrees.
    ValidateLattice {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        side: u32,
    },
    /// Build the device or AS channel from ITDK-style files.
    IngestItdk(IngestArgs),
    /// Degree histogram and degree dimension.
    Degree {
        #[arg(long)]
        graph: PathBuf,
        /// Emit (ln k, ln N(k)) rows instead of (k, N(k)).
        #[arg(long)]
        loglog: bool,
    },
    /// Ball growth N(R) around one origin.
    Ball {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        origin: u32,
        #[arg(long)]
        rmax: u32,
        #[arg(long)]
        exclude_origin: bool,
    },
    /// Ensemble dimension profile over random origins.
    Dimension {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        rmax: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        exclude_origin: bool,
        /// Draw origins only from the largest connected component.
        #[arg(long)]
        giant_only: bool,
    },
    /// Calibration table over hypercubes of several dimensions.
    Calibrate {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<u32>,
        #[arg(long, default_value_t = 20)]
        side: u32,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        rmax: u32,
        #[arg(long)]
        exclude_origin: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Channel {
    Device,
    As,
}

#[derive(Debug, Args)]
struct IngestArgs {
    #[arg(long)]
    nodes: PathBuf,
    #[arg(long)]
    links: PathBuf,
    #[arg(long)]
    node_as: Option<PathBuf>,
    #[arg(long, value_enum)]
    channel: Channel,
    #[arg(long)]
    out: PathBuf,
    /// Sidecar file for "id name" lines.
    #[arg(long)]
    names: Option<PathBuf>,
    /// Sidecar file for "id type" lines.
    #[arg(long)]
    types: Option<PathBuf>,
}

/// Run failed in a way that maps to a specific exit code.
#[derive(Debug)]
enum Failure {
    /// A check ran and did not pass (exit 1).
    Validation,
    /// Bad input, missing file, bad arguments (exit 2).
    Usage(String),
}

impl From<statdim::Error> for Failure {
    fn from(e: statdim::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.quiet {
            log::LevelFilter::Off
        } else {
            log::LevelFilter::Warn
        })
        .parse_default_env()
        .init();

    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = commands::run(&cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation) => {
            let _ = out.flush();
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
