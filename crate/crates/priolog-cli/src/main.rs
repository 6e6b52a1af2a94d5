use std::process::ExitCode;

use clap::Parser;

mod report;
mod run;

/// Solve prioritized extended logic programs.
#[derive(Debug, Parser)]
#[command(name = "priolog", version, about)]
enum Cli {
    Solve(run::SolveArgs),
}

fn main() -> ExitCode {
    let Cli::Solve(args) = Cli::parse();
    run::solve(&args)
}
