//! `gmrotor`: experiment runners for the kicked golden-mean rotor.
//!
//! Subcommands: `lemmas`, `classical-diffusion`, `quantum-localize`,
//! `trace`, `kick-coeffs`. Exit codes: 0 success, 1 check violation,
//! 2 configuration or I/O error.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "gmrotor",
    version,
    about = "Kicked golden-mean rotor: verification suites and experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical checks of the supporting number-theoretic lemmas.
    Lemmas(commands::lemmas::LemmasArgs),
    /// Exact and Monte-Carlo classical diffusion measures.
    ClassicalDiffusion(commands::diffusion::DiffusionArgs),
    /// Long quantum evolutions with localization diagnostics.
    QuantumLocalize(commands::localize::LocalizeArgs),
    /// Correspondence trace comparing f^n∘Λ with Λ∘F^n.
    Trace(commands::trace::TraceArgs),
    /// Dump the Fourier coefficients of the kick multiplier.
    KickCoeffs(commands::kick::KickArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Lemmas(args) => commands::lemmas::run(args),
        Command::ClassicalDiffusion(args) => commands::diffusion::run(args),
        Command::QuantumLocalize(args) => commands::localize::run(args),
        Command::Trace(args) => commands::trace::run(args),
        Command::KickCoeffs(args) => commands::kick::run(args),
    };
    match outcome {
        Ok(violations) => {
            if violations {
                std::process::exit(1);
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}
