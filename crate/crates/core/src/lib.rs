//! A 2D radix-2 FFT engine organized the way a GPU would run it: the
//! transform is compiled into an immutable schedule of pure data-parallel
//! gather passes (scramble and butterfly) executed over a pair of resident
//! ping-pong buffers, with every auxiliary table (bit-reversal permutations
//! and per-stage butterfly descriptors) precomputed at plan time.
//!
//! The crate also ships the brute-force DFT oracle used to verify the fast
//! path, and PGM/CSV serialization for feeding images in and spectra out.
//!
//! ```
//! use passfft::{build_plan, run_plan, Backend, Buffer2D, Direction};
//!
//! let image = Buffer2D::from_real_rows(&[vec![1.0f32, 2.0], vec![3.0, 4.0]]).unwrap();
//! let plan = build_plan(2, 2).unwrap();
//! let spectrum = run_plan(&plan, &image, Direction::Forward, &Backend::serial()).unwrap();
//! assert_eq!(spectrum.get(0, 0).re, 10.0);
//! ```

pub mod buffer;
pub mod complex;
pub mod error;
pub mod executor;
pub mod io;
pub mod kernels;
pub mod oracle;
pub mod plan;

pub use buffer::Buffer2D;
pub use complex::{Complex, Real};
pub use error::{Error, Result};
pub use executor::{
    hardware_workers, run_plan, run_plan_traced, Backend, BackendChoice, Direction, PassTrace,
    TracedPass,
};
pub use io::{load_complex_csv, load_pgm, save_complex_csv, save_pgm, GrayImage};
pub use kernels::{butterfly_pass, conjugate_pass, magnitude_map, scale_pass, scramble_pass};
pub use oracle::{max_abs_error, naive_dft_1d, naive_dft_2d};
pub use plan::{
    bit_reverse, build_plan, build_plan_with_max_dim, build_scramble_table, build_stage_table,
    count_operations, twiddle, Axis, Butterfly, FftPlan, PassDescriptor, PassTable, ScrambleTable,
    StageTable, DEFAULT_MAX_DIM,
};
