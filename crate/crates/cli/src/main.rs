//! `distinguon` command-line front end.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 size cap exceeded,
//! 3 a verification check failed.

mod args;
mod commands;
mod manifest;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use commands::VerificationFailed;

const EXIT_VALIDATION: u8 = 1;
const EXIT_SIZE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<VerificationFailed>() {
            return EXIT_VERIFY;
        }
        if let Some(e) = cause.downcast_ref::<distinguon::Error>() {
            return if e.is_size_limit() { EXIT_SIZE } else { EXIT_VALIDATION };
        }
    }
    EXIT_VALIDATION
}

fn kind(err: &anyhow::Error) -> &'static str {
    for cause in err.chain() {
        if cause.is::<VerificationFailed>() {
            return "verification_failed";
        }
        if let Some(e) = cause.downcast_ref::<distinguon::Error>() {
            return e.kind();
        }
        if cause.is::<std::io::Error>() {
            return "io";
        }
    }
    "error"
}

fn report(err: &anyhow::Error, code: u8, json: bool) {
    if json {
        let value = serde_json::json!({
            "error": kind(err),
            "message": format!("{err:#}"),
            "exit_code": code,
        });
        eprintln!("{value}");
    } else {
        eprintln!("error: {err:#}");
    }
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().collect();
    let json_requested = raw.iter().any(|a| a == "--json-errors");
    let cli = match Cli::try_parse_from(&raw) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            if json_requested {
                report(&anyhow::Error::msg(e.to_string().trim().to_string()), EXIT_VALIDATION, true);
            } else {
                let _ = e.print();
            }
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            report(&anyhow::anyhow!("configuring {n} threads: {e}"), EXIT_VALIDATION, cli.json_errors);
            return ExitCode::from(EXIT_VALIDATION);
        }
    }
    match commands::run(&cli, &raw[1..], true) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = exit_code(&err);
            report(&err, code, cli.json_errors);
            ExitCode::from(code)
        }
    }
}
