use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use spin_moduli::cli::{run, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "spin", about = "Spin structures on nodal curves: enumeration, local models, torsor verification")]
struct Args {
    #[command(subcommand)]
    command: Cli,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker count (reports are canonical regardless)
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for random-graph sampling in the verification gate
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cli {
    /// Spin table of a curve given as a dual-graph JSON file
    Supports { file: PathBuf },
    /// Local model at a singular spin curve: ideal, charts, Jacobian rank
    Local {
        #[arg(long)]
        delta: usize,
    },
    /// Stratification report for a two-component curve
    Strata {
        #[arg(long)]
        g1: u32,
        #[arg(long)]
        g2: u32,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Exhaustive torsor verification over F_q
    Verify {
        #[arg(long)]
        g1: u32,
        #[arg(long)]
        g2: u32,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        q: u64,
    },
    /// Run the whole verification gate at desk-scale bounds
    All,
}

fn main() {
    let args = Args::parse();
    let command = match args.command {
        Cli::Supports { file } => Command::Supports { input: file },
        Cli::Local { delta } => Command::Local { delta },
        Cli::Strata { g1, g2, delta, q } => Command::Strata { g1, g2, delta, q },
        Cli::Verify { g1, g2, delta, q } => Command::Verify { g1, g2, delta, q },
        Cli::All => Command::All { seed: args.seed },
    };
    let config = RunConfig {
        command,
        format: match args.format {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
        },
        jobs: args.jobs,
    };
    let mut stdout = std::io::stdout().lock();
    std::process::exit(run(&config, &mut stdout));
}
