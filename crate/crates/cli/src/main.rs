//! `pmx`: decompose pointwise mutual information, classify exclusions,
//! run the verification suite and draw probability mass diagrams.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input or
//! parameters, 3 unknown event label, 4 undefined quantity.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pmx_core::diagram::{ChainOrdering, Panel};
use pmx_core::verify::Fault;
use pmx_core::{Backend, LogBase};

#[derive(Debug, Parser)]
#[command(name = "pmx", version, about = "Specificity and ambiguity of pointwise mutual information")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// i(y->x)
    Plain,
    /// i(y->x|z)
    Conditional,
    /// i(yz->x)
    JointSource,
    /// i(y->xz)
    JointTarget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagramFormat {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Numeric {
    /// Logarithm base: a real number above 1, or `e`.
    #[arg(long, default_value = "2")]
    pub base: LogBase,
    #[arg(long, default_value = "float")]
    pub backend: Backend,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose i(x;y) into specificity and ambiguity.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        /// Target event label.
        #[arg(long)]
        x: String,
        /// Source event label.
        #[arg(long)]
        y: String,
        /// Third event label, required by the three-variable modes.
        #[arg(long)]
        z: Option<String>,
        #[arg(long, value_enum, default_value = "plain")]
        mode: Mode,
        #[command(flatten)]
        numeric: Numeric,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Split the mass excluded by y into informative and misinformative parts.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "float")]
        backend: Backend,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run every check over seeded random distributions.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Alphabet sizes, e.g. `2,2` or `2,2,2`.
        #[arg(long, default_value = "2,2,2", value_delimiter = ',')]
        shape: Vec<usize>,
        #[command(flatten)]
        numeric: Numeric,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, hide = true)]
        fault: Option<Fault>,
    },
    /// Draw a probability mass diagram.
    Diagram {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Second source label; draws the chained diagram of a three-variable file.
        #[arg(long)]
        z: Option<String>,
        /// Panels for two-variable files, in order.
        #[arg(long, value_delimiter = ',', default_value = "prior,exclusion,posterior")]
        panels: Vec<Panel>,
        /// Observation order for three-variable files: one-shot, y-then-z or z-then-y.
        #[arg(long, default_value = "one-shot")]
        ordering: ChainOrdering,
        #[arg(long, value_enum, default_value = "ascii")]
        format: DiagramFormat,
        #[arg(long, default_value = "float")]
        backend: Backend,
        #[arg(long, default_value_t = pmx_core::diagram::DEFAULT_WIDTH_PX)]
        width: u32,
        #[arg(long, default_value_t = pmx_core::diagram::DEFAULT_HEIGHT_PX)]
        height: u32,
        /// Text rows per 1/8 of mass.
        #[arg(long, default_value_t = pmx_core::diagram::DEFAULT_UNIT_HEIGHT)]
        unit_height: usize,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a random distribution file.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "2,2", value_delimiter = ',')]
        shape: Vec<usize>,
        #[arg(long, default_value = "float")]
        backend: Backend,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
