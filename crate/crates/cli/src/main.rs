mod artifact;
mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skeletal::config::{Caps, OutputFormat, RunConfig};

use artifact::{render, Status};

#[derive(Parser, Debug)]
#[command(
    name = "skeletal",
    version,
    about = "Skeletal degeneracy, dependent random choice and greedy embedding experiments"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Root seed; every stage seed is derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Retry budget for each randomized stage.
    #[arg(long, global = true, default_value_t = 16)]
    retries: usize,
    /// Enumeration cap for extension and defect checks.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Node budget for the brute-force oracles.
    #[arg(long, global = true)]
    node_budget: Option<u64>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Use the asymptotic constants instead of desk-scale defaults.
    #[arg(long, global = true)]
    paper_constants: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a hypergraph from a named family.
    Gen(commands::GenArgs),
    /// Skeletal degeneracy with its certificate.
    Degeneracy(commands::DegeneracyArgs),
    /// Dependent random choice pruning of a k-partite host.
    Prune(commands::PruneArgs),
    /// Linear-Turán embedding pipeline.
    Embed(commands::EmbedArgs),
    /// Deletion-method lower-bound constructions.
    TuranLb(commands::TuranArgs),
    /// Exact extremal number by exhaustive search.
    BruteEx(commands::BruteExArgs),
    /// Exact Ramsey number by exhaustive search.
    BruteRamsey(commands::BruteRamseyArgs),
    /// Monochromatic-copy experiments over colorings.
    Ramsey(commands::RamseyArgs),
    /// Validate a hypergraph or coloring file.
    Validate(commands::ValidateArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gen(_) => "gen",
            Command::Degeneracy(_) => "degeneracy",
            Command::Prune(_) => "prune",
            Command::Embed(_) => "embed",
            Command::TuranLb(_) => "turan-lb",
            Command::BruteEx(_) => "brute-ex",
            Command::BruteRamsey(_) => "brute-ramsey",
            Command::Ramsey(_) => "ramsey",
            Command::Validate(_) => "validate",
        }
    }
}

fn config(g: &Global) -> RunConfig {
    let defaults = Caps::default();
    RunConfig {
        seed: g.seed,
        retries: g.retries,
        caps: Caps {
            enumeration: g.cap.unwrap_or(defaults.enumeration),
            search_nodes: g.node_budget,
            ..defaults
        },
        output: g.out.clone(),
        format: match g.format {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        },
        paper_constants: g.paper_constants,
    }
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let cfg = config(&cli.global);
    let name = cli.command.name();
    let outcome = commands::dispatch(&cli.command, &cfg)?;
    let text = render(name, &cfg, &outcome)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                // a closed reader (e.g. `| head`) is not an error of ours
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if informational {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
