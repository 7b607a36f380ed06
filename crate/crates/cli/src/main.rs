mod args;
mod commands;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    match cli.command {
        Command::Fit {
            input,
            bounds,
            method,
            format,
            strict,
        } => commands::cmd_fit(&input, bounds.k_min, bounds.k_max, method.into(), format, strict, out),
        Command::Eval { function, arg, format } => commands::cmd_eval(function, arg, format, out),
        Command::Moments {
            gamma,
            bounds,
            order,
            format,
        } => commands::cmd_moments(gamma, bounds.k_min, bounds.k_max, order, format, out),
        Command::Sample {
            gamma,
            bounds,
            n,
            seed,
            output,
        } => commands::cmd_sample(gamma, bounds.k_min, bounds.k_max, n, seed, output.as_deref(), out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            drop(out);
            eprintln!("truncexp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
