//! `fjrw`: exact reports over invertible quasi-homogeneous potentials and
//! the end-to-end loop mirror verification.
//!
//! Exit codes: 0 success, 1 bad input or domain error, 2 verification
//! failure. Reports are byte-identical across runs for identical inputs.

use clap::{Parser, Subcommand, ValueEnum};
use fjrw_core::error::Error;
use fjrw_core::qpoly::{parse_potential, Polynomial};
use fjrw_core::report::{self, Report};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fjrw", version, about = "Exact orbifold ring and mirror-symmetry reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Weights, central charge, Milnor number, and structural class.
    Analyze { potential: String },
    /// The maximal diagonal symmetry group.
    Group { potential: String },
    /// The quotient-ring basis, pairing, and multiplication table.
    Milnor { potential: String },
    /// The orbifold state space with degrees and pairing.
    StateSpace { potential: String },
    /// The loop orbifold ring with axiom cross-checks and correlator trace.
    Ring { potential: String },
    /// Both sides of the mirror and the isomorphism verification.
    MirrorCheck { potential: String },
    /// Mirror verification over every loop with exponents up to the bound.
    Corpus {
        #[arg(long, default_value_t = 7)]
        max_exponent: u32,
    },
}

fn load_potential(arg: &str) -> Result<Polynomial, Error> {
    let text = if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Parse {
            pos: 0,
            msg: format!("cannot read {}: {}", path, e),
        })?
    } else {
        arg.to_string()
    };
    parse_potential(text.trim())
}

fn build_report(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Analyze { potential } => report::analyze_report(&load_potential(potential)?),
        Command::Group { potential } => report::group_report(&load_potential(potential)?),
        Command::Milnor { potential } => report::milnor_report(&load_potential(potential)?),
        Command::StateSpace { potential } => {
            report::state_space_report(&load_potential(potential)?)
        }
        Command::Ring { potential } => report::ring_report(&load_potential(potential)?),
        Command::MirrorCheck { potential } => {
            report::mirror_check_report(&load_potential(potential)?)
        }
        Command::Corpus { max_exponent } => {
            if *max_exponent < 2 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("--max-exponent must be at least 2, got {}", max_exponent),
                });
            }
            Ok(report::corpus_report(*max_exponent))
        }
    }
}

/// Input and construction problems exit 1; failures of the verified
/// statements themselves exit 2.
fn error_exit(e: &Error) -> u8 {
    match e {
        Error::CrossCheckMismatch(_)
        | Error::RelationViolation(_)
        | Error::PowerRuleViolation(_)
        | Error::AxiomConflict(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match build_report(&cli.command) {
        Ok(rep) => {
            let rendered = match cli.format {
                Format::Text => rep.to_text(),
                Format::Json => {
                    let mut s = rep.to_json();
                    s.push('\n');
                    s
                }
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(1);
                }
            } else {
                print!("{}", rendered);
            }
            if rep.verification_failed() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {}", e),
                Format::Json => eprintln!("{{\"error\": {:?}}}", e.to_string()),
            }
            ExitCode::from(error_exit(&e))
        }
    }
}
