use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fiberlink_cli::{run_batch, run_file, Command, Options, TargetArg, EXIT_INVALID};

/// Realizability of singular sets and regular fibers of generic maps, from
/// link diagrams.
#[derive(Parser, Debug)]
#[command(name = "fiberlink", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Diagram or scene file.
    #[arg(required_unless_present = "batch", conflicts_with = "batch")]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "plane")]
    target: TargetArg,
    /// Emit a key-sorted JSON report.
    #[arg(long)]
    json: bool,
    /// Evaluate every `*.pd` file in a directory.
    #[arg(long, value_name = "DIR")]
    batch: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INVALID)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let opts = Options {
        command: cli.command,
        target: cli.target.into(),
        json: cli.json,
    };
    let out = match (&cli.batch, &cli.file) {
        (Some(dir), _) => run_batch(opts, dir),
        (None, Some(file)) => run_file(opts, file),
        (None, None) => unreachable!("clap requires a file or --batch"),
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
