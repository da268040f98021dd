mod args;
mod commands;
mod config;
mod error;
mod output;

use std::io::IsTerminal;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ColorChoice, CommandFactory, FromArgMatches};

use args::Cli;
use error::CliError;

fn color() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stderr().is_terminal()
}

fn report(label: &str, ansi: &str, msg: &str) {
    if color() {
        eprintln!("\x1b[{ansi}m{label}:\x1b[0m {msg}");
    } else {
        eprintln!("{label}: {msg}");
    }
}

pub(crate) fn warn(msg: &str) {
    report("warning", "33", msg);
}

pub(crate) fn info(msg: &str) {
    eprintln!("{msg}");
}

fn parse() -> Result<Option<Cli>, CliError> {
    let argv = config::expand(std::env::args_os().collect())?;
    let choice = if color() { ColorChoice::Auto } else { ColorChoice::Never };
    let matches = match Cli::command().color(choice).try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return Ok(None);
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = e.print();
            return Err(CliError::Validation("a subcommand is required".into()));
        }
        Err(e) => {
            let text = e.render().to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let line = line.strip_prefix("error: ").unwrap_or(line);
            return Err(CliError::Validation(line.to_string()));
        }
    };
    Cli::from_arg_matches(&matches)
        .map(Some)
        .map_err(|e| CliError::Validation(e.to_string()))
}

fn main() -> ExitCode {
    let result = parse().and_then(|cli| match cli {
        Some(cli) => commands::run(&cli.command),
        None => Ok(()),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report("error", "31", &e.to_string());
            ExitCode::from(e.code() as u8)
        }
    }
}
