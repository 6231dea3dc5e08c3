use clap::Args;
use passfft::{
    build_plan, max_abs_error, naive_dft_2d, run_plan, Backend, BackendChoice, Buffer2D,
    Direction, Real,
};

use crate::common::{parse_backend, CliError, PrecisionArg};
use crate::rng;

#[derive(Args)]
pub struct VerifyArgs {
    /// Comma-separated square sizes to verify.
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64,128,256")]
    pub sizes: Vec<usize>,

    /// Random images per size.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = PrecisionArg::Single)]
    pub precision: PrecisionArg,

    /// Execution backend: serial | parallel[:workers].
    #[arg(long, default_value = "parallel", value_parser = parse_backend)]
    pub backend: BackendChoice,
}

/// Error bound per precision. Forward spectra are compared on the
/// 1/(width*height)-normalized scale: the raw forward magnitude grows with
/// the element count, so no fixed threshold exists for it across sizes.
fn bound(precision: PrecisionArg) -> f64 {
    match precision {
        PrecisionArg::Single => 1e-2,
        PrecisionArg::Double => 1e-9,
    }
}

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    let backend = args.backend.build().map_err(CliError::engine)?;
    let limit = bound(args.precision);
    let mut failed = false;
    println!("size,max_error");
    for &size in &args.sizes {
        let worst = match args.precision {
            PrecisionArg::Single => verify_size::<f32>(size, args, &backend)?,
            PrecisionArg::Double => verify_size::<f64>(size, args, &backend)?,
        };
        println!("{size},{worst}");
        failed |= worst.is_nan() || worst > limit;
    }
    if failed {
        Err(CliError::bound(format!(
            "verification error exceeded {limit}"
        )))
    } else {
        Ok(())
    }
}

fn verify_size<P: Real>(
    size: usize,
    args: &VerifyArgs,
    backend: &Backend,
) -> Result<f64, CliError> {
    let plan = build_plan::<P>(size, size).map_err(CliError::engine)?;
    let normalization = (size * size) as f64;
    let mut worst = 0.0f64;
    for trial in 0..args.trials {
        let image = rng::random_image(args.seed, size, size, trial);
        let fast: Buffer2D<P> = image.to_buffer();
        let reference: Buffer2D<f64> = image.to_buffer();

        let fwd = run_plan(&plan, &fast, Direction::Forward, backend).map_err(CliError::engine)?;
        let fwd_ref = naive_dft_2d(&reference, Direction::Forward).map_err(CliError::engine)?;
        let forward_error =
            max_abs_error(&fwd, &fwd_ref).map_err(CliError::engine)? / normalization;

        let inv = run_plan(&plan, &fast, Direction::Inverse, backend).map_err(CliError::engine)?;
        let inv_ref = naive_dft_2d(&reference, Direction::Inverse).map_err(CliError::engine)?;
        let inverse_error = max_abs_error(&inv, &inv_ref).map_err(CliError::engine)?;

        worst = worst.max(forward_error).max(inverse_error);
    }
    Ok(worst)
}
