mod args;
mod commands;
mod error;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;
use output::{Format, Table};

fn open_output(cli: &Cli) -> Result<Box<dyn Write>, CliError> {
    Ok(match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(cli: &Cli, table: &Table) -> Result<(), CliError> {
    let mut out = open_output(cli)?;
    table.write(cli.format.unwrap_or(Format::Csv), &mut out)?;
    out.flush()?;
    Ok(())
}

/// Returns whether every verification criterion passed (always true for the
/// data commands).
fn run(cli: &Cli) -> Result<bool, CliError> {
    let table = match &cli.command {
        Command::RateCurve(a) => commands::rate_curve(a)?,
        Command::MeanField(a) => commands::mean_field(a)?,
        Command::Saddle(a) => commands::saddle(a)?,
        Command::Exact(a) => commands::exact(a)?,
        Command::Sample(a) => commands::sample(a, cli.seed)?,
        Command::Verify(a) => {
            let reports = commands::verify_reports(a)?;
            let passed = reports.iter().all(|r| r.passed);
            match cli.format {
                Some(_) => emit(cli, &commands::verify_table(&reports))?,
                None => {
                    let mut out = open_output(cli)?;
                    for r in &reports {
                        writeln!(out, "{r}")?;
                    }
                    let ok = reports.iter().filter(|r| r.passed).count();
                    writeln!(out, "{ok} of {} criteria passed", reports.len())?;
                    out.flush()?;
                }
            }
            return Ok(passed);
        }
    };
    emit(cli, &table)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
