//! `spslab`: command-line front end over the spslab library.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Output;

#[derive(Parser)]
#[command(
    name = "spslab",
    version,
    about = "State property systems and closure spaces"
)]
struct Cli {
    /// Report style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an instance file.
    Validate { file: PathBuf },
    /// Print F(S): the closure space of a system.
    ToClosure { file: PathBuf },
    /// Print G(X): the system of a closure space.
    ToSps { file: PathBuf },
    /// Connection components.
    Components { file: PathBuf },
    /// Classes of points no clopen separates.
    QuasiComponents { file: PathBuf },
    /// Closed-and-open sets.
    Clopens { file: PathBuf },
    /// Whether every finite union of closed sets is closed.
    IsTopological { file: PathBuf },
    /// Whether the only clopens are the empty set and everything.
    IsConnected { file: PathBuf },
    /// Superselection table over all property pairs.
    SsrTable { file: PathBuf },
    /// Classical properties with their complements.
    ClassicalProps { file: PathBuf },
    /// Full component decomposition with its evidence.
    Decompose { file: PathBuf },
    /// System generated by the classical properties.
    ClassicalPart { file: PathBuf },
    /// System over the components, or a counterexample (exit 1).
    TotallyClassical { file: PathBuf },
    /// Sub-system over the interval [0, PROPERTY].
    Segment {
        file: PathBuf,
        #[arg(long)]
        property: String,
    },
    /// Every closure space on n points.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// A seeded random closure space.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        density: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Cross-check every theorem on a file, an enumerated corpus, or a
    /// random corpus.
    CheckTheorems {
        file: Option<PathBuf>,
        /// Check every space on this many points.
        #[arg(long)]
        enumerate: Option<usize>,
        /// Check this many random spaces.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn threads() -> usize {
    std::env::var("SPSLAB_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
}

fn run(cli: Cli) -> Result<Output, Output> {
    use Command::*;
    match cli.command {
        Validate { file } => commands::validate(&file),
        ToClosure { file } => commands::to_closure(&file),
        ToSps { file } => commands::to_sps(&file),
        Components { file } => commands::components(&file),
        QuasiComponents { file } => commands::quasi_components(&file),
        Clopens { file } => commands::clopens(&file),
        IsTopological { file } => commands::is_topological(&file),
        IsConnected { file } => commands::is_connected(&file),
        SsrTable { file } => commands::ssr_table(&file),
        ClassicalProps { file } => commands::classical_props(&file),
        Decompose { file } => commands::decompose(&file),
        ClassicalPart { file } => commands::classical_part(&file),
        TotallyClassical { file } => commands::totally_classical(&file),
        Segment { file, property } => commands::segment(&file, &property),
        Enumerate { n } => commands::enumerate(n, threads()),
        Random { n, density, seed } => commands::random(n, density, seed),
        CheckTheorems {
            file,
            enumerate,
            random,
            max_n,
            density,
            seed,
        } => commands::check_theorems(
            file.as_deref(),
            enumerate,
            random.map(|count| (count, max_n, density, seed)),
            threads(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let output = run(cli).unwrap_or_else(|e| e);
    match format {
        Format::Text => print!("{}", output.text),
        Format::Structured => println!(
            "{}",
            serde_json::to_string_pretty(&output.structured).expect("json value serializes")
        ),
    }
    ExitCode::from(output.outcome.code())
}
