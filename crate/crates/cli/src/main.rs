use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

mod commands;
mod load;
mod text;

use commands::{Cli, Failure};

// sysexits-style codes
const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_NOINPUT: u8 = 66;
const EX_PRECONDITION: u8 = 2;

/// clap's message up to the usage block, on one line.
fn clap_message(e: &clap::Error) -> String {
    let text = e.to_string();
    let lines: Vec<&str> = text.lines().take_while(|l| !l.trim().is_empty()).map(str::trim).collect();
    lines.join(" ")
}

fn diagnostic(kind: &str, message: &str) {
    let v = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{v}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    diagnostic("usage", &clap_message(&e));
                    ExitCode::from(EX_USAGE)
                }
                _ => {
                    diagnostic("validation", &clap_message(&e));
                    ExitCode::from(EX_PRECONDITION)
                }
            };
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Io(msg)) => {
            diagnostic("io", &msg);
            ExitCode::from(EX_NOINPUT)
        }
        Err(Failure::Rejected { kind, message, output }) => {
            if let Some(out) = output {
                print!("{out}");
            }
            diagnostic(&kind, &message);
            ExitCode::from(EX_PRECONDITION)
        }
        Err(Failure::Core(e)) => {
            let code = match e {
                dgc_core::Error::Parse(_) | dgc_core::Error::Schema(_) => EX_DATAERR,
                _ => EX_PRECONDITION,
            };
            diagnostic(error_kind(&e), &e.to_string());
            ExitCode::from(code)
        }
    }
}

fn error_kind(e: &dgc_core::Error) -> &'static str {
    use dgc_core::Error::*;
    match e {
        Parse(_) => "parse",
        Schema(_) => "schema",
        Dimension(_) => "dimension",
        RingMismatch(_) => "ring",
        NonConstant(_) => "non-constant",
        NotAComplex(_) => "not-a-complex",
        NotAChainMap(_) => "not-a-chain-map",
        Axiom(_) => "axiom",
        Precondition(_) => "precondition",
    }
}
