use std::process::ExitCode;

use clap::Parser;
use dopkit::cli::Cli;
use dopkit::{run, write_output, CliError, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode, CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let outcome = run(&cfg)?;
    write_output(&cfg.output, &outcome.json)?;
    eprintln!("{}", outcome.summary);
    Ok(if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
