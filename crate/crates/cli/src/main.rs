mod args;
mod commands;
mod input;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    let name = commands::name(&cli.command);
    let start = Instant::now();
    match commands::run(&cli.command, cli.global.seed) {
        Ok(out) => report::emit(&name, cli.global.seed, cli.global.format, start.elapsed().as_millis(), &out),
        Err(e) => report::emit_error(&name, cli.global.format, &e),
    }
}
