use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod run;

/// Structure checks and coloring for (4K1, C4, C6)-free graphs.
///
/// Graphs are read as DIMACS `.col` files with 1-based vertices. Reports
/// are JSON objects, one per input file and line, each with `"schema": 1`.
///
/// Exit codes: 0 success, 1 a failed write or a seed that yields no graph,
/// 2 usage or unreadable input, 3 input outside the class (or without the
/// requested hole), 4 structure violation on an in-class graph.
#[derive(Debug, Parser)]
#[command(name = "holeforge", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HoleKind {
    C5,
    C7,
}

impl HoleKind {
    pub fn length(self) -> usize {
        match self {
            HoleKind::C5 => 5,
            HoleKind::C7 => 7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Decompose, certify each atom's structure, then color.
    Pipeline,
    /// Branch and bound on the whole graph.
    Exact,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Membership in the class plus which holes and C5-twins occur.
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Partition of the vertices around a C5 or C7.
    Partition {
        #[arg(long, value_enum)]
        hole: HoleKind,
        /// Which hole to use, in detection order.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Check every claim about the partition around a hole; exit 0 iff all pass.
    Audit {
        #[arg(long, value_enum)]
        hole: HoleKind,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Build a clique-width expression and check it evaluates to the input.
    CwdBuild {
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Write the expression text of each input here (one file only).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Clique cutset decomposition tree.
    Decompose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Optimal coloring; prints `s <vertex> <color>` lines.
    Color {
        #[arg(long, value_enum, default_value_t = Mode::Pipeline)]
        mode: Mode,
        /// Write one JSON trace per input to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Random in-class graphs as DIMACS.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, env = "HOLEFORGE_SEED")]
        seed: u64,
        #[arg(long, value_enum)]
        require: Option<HoleKind>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Write `g<seed>.col` files here instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All in-class graphs on n vertices, up to isomorphism.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        n: u8,
        /// Keep every labelled graph instead of one per isomorphism class.
        #[arg(long)]
        labelled: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run::run(cli.command))
}
