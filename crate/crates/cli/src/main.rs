mod args;
mod commands;
mod verify;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, VerifyCmd};

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Shape(c) => commands::shape(c)?,
        Command::Family(c) => commands::family(c)?,
        Command::Opepl(c) => commands::opepl(c)?,
        Command::Bound(c) => commands::bound(c)?,
        Command::Stadium(c) => commands::stadium(c)?,
        Command::Optimality(c) => commands::optimality(c)?,
        Command::Verify(VerifyCmd::All { seed, shapes }) => {
            let checks = verify::run_all(seed, shapes);
            verify::print_table(&checks);
            if checks.iter().any(|c| !c.pass) {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
