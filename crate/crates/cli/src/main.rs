use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use modcanon_cli::args::{Command, OracleCommand};
use modcanon_cli::{commands, Cli, CliError};

fn output_path(command: &Command) -> Option<&std::path::Path> {
    match command {
        Command::Tile { out, .. }
        | Command::Construct { out, .. }
        | Command::Table1 { out, .. }
        | Command::Verify { out, .. }
        | Command::VuzaN { out, .. }
        | Command::Oracle(OracleCommand::Complement { out, .. })
        | Command::Oracle(OracleCommand::Census { out, .. }) => out.output.as_deref(),
        Command::Render { output, .. } => output.as_deref(),
    }
}

fn write(path: Option<&std::path::Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            fs::write(p, body).map_err(|e| CliError::Io { context: format!("writing {}", p.display()), source: e })
        }
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Io { context: "writing stdout".into(), source: e }),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let depth = if matches!(cli.command, Command::Oracle(_)) { 2 } else { 1 };
    let raw: Vec<String> = std::env::args().skip(1 + depth).collect();
    let result = commands::run(&cli.command, &raw).and_then(|body| write(output_path(&cli.command), &body));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification { report }) => {
            let _ = write(output_path(&cli.command), &report);
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
