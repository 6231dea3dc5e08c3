use std::fs;
use std::path::PathBuf;

use clap::{ArgAction, Args, ValueEnum};
use passfft::{
    build_plan_with_max_dim, load_complex_csv, load_pgm, magnitude_map, run_plan,
    save_complex_csv, save_pgm, BackendChoice, Buffer2D, Real, DEFAULT_MAX_DIM,
};

use crate::common::{parse_backend, CliError, DirectionArg, PrecisionArg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// Normalized magnitude spectrum rendered as a binary PGM.
    PgmMagnitude,
    /// Lossless complex CSV (`row,col,re,im`).
    Csv,
}

#[derive(Args)]
pub struct TransformArgs {
    /// Input file: PGM (P2/P5) image or complex CSV.
    #[arg(long)]
    pub input: PathBuf,

    /// Output file path.
    #[arg(long)]
    pub output: PathBuf,

    #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
    pub direction: DirectionArg,

    #[arg(long, value_enum, default_value_t = FormatArg::PgmMagnitude)]
    pub format: FormatArg,

    #[arg(long, value_enum, default_value_t = PrecisionArg::Single)]
    pub precision: PrecisionArg,

    /// Execution backend: serial | parallel[:workers].
    #[arg(long, default_value = "parallel", value_parser = parse_backend)]
    pub backend: BackendChoice,

    /// Apply ln(1+m) to magnitudes (pgm-magnitude only).
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub log_scale: bool,

    /// Center the DC element (pgm-magnitude only).
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub shift: bool,

    /// Maximum supported dimension per axis.
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
}

pub fn run(args: &TransformArgs) -> Result<(), CliError> {
    let bytes = fs::read(&args.input).map_err(|e| CliError::io("reading input", e))?;
    match args.precision {
        PrecisionArg::Single => go::<f32>(args, &bytes),
        PrecisionArg::Double => go::<f64>(args, &bytes),
    }
}

fn go<P: Real>(args: &TransformArgs, bytes: &[u8]) -> Result<(), CliError> {
    let buffer: Buffer2D<P> = parse_input(bytes)?;
    let plan = build_plan_with_max_dim(buffer.width(), buffer.height(), args.max_dim)
        .map_err(CliError::engine)?;
    let backend = args.backend.build().map_err(CliError::engine)?;
    let out = run_plan(&plan, &buffer, args.direction.into(), &backend)
        .map_err(CliError::engine)?;

    let payload = match args.format {
        FormatArg::PgmMagnitude => {
            let grid = magnitude_map(&out, args.log_scale, args.shift);
            save_pgm(out.width(), out.height(), &grid).map_err(CliError::engine)?
        }
        FormatArg::Csv => save_complex_csv(&out).into_bytes(),
    };
    fs::write(&args.output, payload).map_err(|e| CliError::io("writing output", e))
}

fn parse_input<P: Real>(bytes: &[u8]) -> Result<Buffer2D<P>, CliError> {
    if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        Ok(load_pgm(bytes).map_err(CliError::engine)?.to_buffer())
    } else if bytes.starts_with(b"row,col") {
        let text = std::str::from_utf8(bytes)
            .map_err(|_| CliError::data("CSV input is not valid UTF-8"))?;
        load_complex_csv(text).map_err(CliError::engine)
    } else {
        Err(CliError::data(
            "unrecognized input format (expected PGM P2/P5 or complex CSV)",
        ))
    }
}
