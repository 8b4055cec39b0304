//! `kstab`: verify, report and cross-check the certificate corpus, and run the
//! Pfaffian checks of the smoothing family.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kstab_cli::{run_oracle, run_pfaffian, run_report, run_verify, Outcome};

#[derive(Parser)]
#[command(name = "kstab", version, about = "Exact K-stability certificate verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every certificate of the corpus.
    Verify { root: PathBuf },
    /// Print the per-family ledger of invariants and verdicts.
    Report {
        root: PathBuf,
        /// One `key=value` line per cell.
        #[arg(long)]
        machine: bool,
    },
    /// Compare flag certificates with the surface Zariski oracle at sampled points.
    Oracle {
        root: PathBuf,
        /// Interior points per chamber.
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = kstab_core::certify::oracle::DEFAULT_SEED)]
        seed: u64,
    },
    /// Expand the Pfaffians of the smoothing family and check the stated relations.
    Pfaffian,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { root } => run_verify(&root),
        Command::Report { root, machine } => run_report(&root, machine),
        Command::Oracle { root, samples, seed } => run_oracle(&root, samples as usize, seed),
        Command::Pfaffian => run_pfaffian(),
    };
    let Outcome { stdout, stderr, code } = outcome;
    print!("{stdout}");
    eprint!("{stderr}");
    ExitCode::from(code)
}
