use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tvasym_cli::{run, Command, Format, RunArgs};

/// Zeta functions of curves over finite fields, masses of Bun_G, and their
/// asymptotics along curve families.
#[derive(Parser)]
#[command(name = "tvasym", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Point counts, degree spectra, P(T), class number, quasi-residue and zeta(2..4).
    Zeta(Common),
    /// Siegel masses per (curve, group), plus semistable masses for GL_n.
    Mass(Common),
    /// Asymptotic right-hand sides, dominance tables and family convergence reports.
    Asymptote(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// JSON config (schema 1).
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutFormat,
    /// Truncation M, overriding the config.
    #[arg(long)]
    trunc: Option<u32>,
    /// Enumeration budget, overriding the config.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, c) = match cli.command {
        Cmd::Zeta(c) => (Command::Zeta, c),
        Cmd::Mass(c) => (Command::Mass, c),
        Cmd::Asymptote(c) => (Command::Asymptote, c),
    };
    let args = RunArgs {
        command,
        config: c.config,
        out: c.out,
        format: match c.format {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        },
        trunc: c.trunc,
        budget: c.budget,
        jobs: c.jobs,
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
