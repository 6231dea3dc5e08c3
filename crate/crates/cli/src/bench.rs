use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use passfft::{build_plan, count_operations, run_plan, BackendChoice, Buffer2D, Direction};

use crate::common::{backend_token, parse_backend, CliError};
use crate::rng;

#[derive(Args)]
pub struct BenchArgs {
    /// Comma-separated square sizes to time.
    #[arg(long, value_delimiter = ',', default_value = "128,256,512,1024")]
    pub sizes: Vec<usize>,

    /// Comma-separated backends, each serial | parallel[:workers].
    #[arg(long, value_delimiter = ',', default_value = "serial,parallel", value_parser = parse_backend)]
    pub backends: Vec<BackendChoice>,

    /// Timed repetitions per (size, backend); the median is reported.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub reps: u32,

    /// Untimed runs before measuring.
    #[arg(long, default_value_t = 1)]
    pub warmup: u32,

    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    let mut csv = String::from("size,backend,median_us,min_us,ops,ops_per_us\n");
    for &size in &args.sizes {
        let plan = build_plan::<f32>(size, size).map_err(CliError::engine)?;
        let input: Buffer2D<f32> = rng::random_image(42, size, size, 0).to_buffer();
        let ops = count_operations(size, size).map_err(CliError::engine)?;
        for &choice in &args.backends {
            let backend = choice.build().map_err(CliError::engine)?;
            for _ in 0..args.warmup {
                run_plan(&plan, &input, Direction::Forward, &backend)
                    .map_err(CliError::engine)?;
            }
            let mut times_us = Vec::with_capacity(args.reps as usize);
            for _ in 0..args.reps {
                let started = Instant::now();
                run_plan(&plan, &input, Direction::Forward, &backend)
                    .map_err(CliError::engine)?;
                times_us.push(started.elapsed().as_micros() as u64);
            }
            times_us.sort_unstable();
            let median = times_us[times_us.len() / 2];
            let min = times_us[0];
            let ops_per_us = ops as f64 / median.max(1) as f64;
            writeln!(
                csv,
                "{size},{},{median},{min},{ops},{ops_per_us:.3}",
                backend_token(choice)
            )
            .expect("string write");
        }
    }
    match &args.out {
        Some(path) => fs::write(path, csv).map_err(|e| CliError::io("writing CSV", e)),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}
