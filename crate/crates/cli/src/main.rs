//! `qca`: indices of quantum cellular automata on small periodic chains.

mod commands;
mod options;
mod report;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use options::{CliError, Options};

#[derive(Parser, Debug)]
#[command(name = "qca", version, about = "Indices of 1D quantum cellular automata on small periodic chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// GNVW index of an automaton.
    Index,
    /// Symmetry-protected indices `ind_g`, `rind_g` (and `π₀, π₁` for ℤ₂).
    Spi,
    /// Witness for a pair of ℤ₂ indices.
    #[command(name = "classify-z2")]
    ClassifyZ2,
    /// Inequivalent ℤ_N representations with equal powered characters.
    #[command(name = "search-collisions")]
    SearchCollisions,
    /// The index through two copies and the copy-exchange.
    #[command(name = "doubled-check")]
    DoubledCheck,
    /// Rényi-2 entanglement transport with ancillas.
    Transport,
    /// The cross-module invariant suite.
    Verify,
}

fn run(cli: &Cli) -> Result<report::Report, CliError> {
    let o = &cli.opts;
    match cli.command {
        Command::Index => commands::index(o),
        Command::Spi => commands::spi(o),
        Command::ClassifyZ2 => commands::classify_z2(o),
        Command::SearchCollisions => commands::search_collisions(o),
        Command::DoubledCheck => commands::doubled_check(o),
        Command::Transport => commands::transport(o),
        Command::Verify => verify::run(o),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = report.render();
            print!("{text}");
            if let Some(path) = &cli.opts.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
