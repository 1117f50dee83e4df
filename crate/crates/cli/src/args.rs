use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Boson sampling with partial distinguishability and loss.
#[derive(Debug, Parser)]
#[command(name = "distinguon", version, about)]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Print errors as one JSON object on stderr.
    #[arg(long, global = true)]
    pub json_errors: bool,

    /// Lift the permanent and basis-size caps.
    #[arg(long, global = true)]
    pub unsafe_size: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a Haar-random unitary.
    GenUnitary {
        #[arg(long)]
        modes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a unitary into adjacent two-mode elements and phases.
    Decompose {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact output distribution.
    Distribution {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw output samples (one occupation array per line).
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `direct` routes bosons one by one (distinguishable model only).
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare samples with an exact distribution.
    Stats {
        #[arg(long)]
        samples: PathBuf,
        #[arg(long)]
        dist: PathBuf,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Trace norm of the partially transposed Werner-type mixture.
    TraceNorm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: f64,
    },
    /// Re-run the command recorded in a manifest and compare output digests.
    Replay {
        #[arg(long)]
        manifest: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Interferometer matrix file.
    #[arg(long)]
    pub unitary: Option<PathBuf>,
    /// Input occupation, e.g. "1,1,0".
    #[arg(long)]
    pub input: String,
    /// Per-mode label vectors (partial model).
    #[arg(long, conflicts_with = "smatrix")]
    pub labels: Option<PathBuf>,
    /// Distinguishability matrix (partial model).
    #[arg(long)]
    pub smatrix: Option<PathBuf>,
    /// Bosons lost before the interferometer (lossy model).
    #[arg(long)]
    pub lost: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Ideal,
    Distinguishable,
    Partial,
    Lossy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    RepTheory,
    Oracle,
    Limits,
    Sampling,
    All,
}
