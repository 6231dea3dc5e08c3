//! Command-line front end: transform images, verify the fast path against
//! the brute-force oracle, benchmark backends, and inspect pass schedules.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad flags, 3 input parse or size
//! errors, 4 verification bound exceeded.

mod bench;
mod common;
mod rng;
mod schedule;
mod transform;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "passfft",
    version,
    about = "2D FFT engine built from data-parallel gather passes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a PGM image or complex CSV and write the spectrum or image.
    Transform(transform::TransformArgs),
    /// Compare the fast path against the double-precision oracle.
    Verify(verify::VerifyArgs),
    /// Time forward transforms across sizes and backends, emitting CSV.
    Bench(bench::BenchArgs),
    /// Print the pass schedule and operation count for a size.
    Plan(schedule::PlanArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Transform(args) => transform::run(&args),
        Command::Verify(args) => verify::run(&args),
        Command::Bench(args) => bench::run(&args),
        Command::Plan(args) => schedule::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
