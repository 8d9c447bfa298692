use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use update_queues_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    // clap exits with status 2 on malformed flags
    let cli = Cli::parse();
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        run(
            &cfg,
            &mut std::io::stdout().lock(),
            &mut std::io::stderr().lock(),
        )
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
