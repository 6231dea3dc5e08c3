//! Runs a plan's pass schedule over two resident buffers. Passes execute
//! strictly in schedule order with a barrier between them; within a pass the
//! backend fans out over output rows, each owned by exactly one worker, so
//! every backend produces bit-identical buffers.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::buffer::Buffer2D;
use crate::complex::Real;
use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::plan::{Axis, FftPlan};

/// Transform direction. The inverse is computed as
/// conj(forward(conj(x))) / (width * height), reusing the forward tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Parsed form of the backend selection string `serial | parallel[:k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendChoice {
    Serial,
    Parallel { workers: Option<usize> },
}

impl FromStr for BackendChoice {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        match spec {
            "serial" => Ok(BackendChoice::Serial),
            "parallel" => Ok(BackendChoice::Parallel { workers: None }),
            _ => match spec.strip_prefix("parallel:") {
                Some(count) => match count.parse::<usize>() {
                    Ok(workers) if workers >= 1 => Ok(BackendChoice::Parallel {
                        workers: Some(workers),
                    }),
                    _ => Err(Error::BadBackendSpec(spec.to_string())),
                },
                None => Err(Error::BadBackendSpec(spec.to_string())),
            },
        }
    }
}

impl BackendChoice {
    pub fn build(self) -> Result<Backend> {
        match self {
            BackendChoice::Serial => Ok(Backend::serial()),
            BackendChoice::Parallel { workers: Some(k) } => Backend::parallel(k),
            BackendChoice::Parallel { workers: None } => Backend::parallel_default(),
        }
    }
}

enum Mode {
    Serial,
    Parallel {
        workers: usize,
        pool: rayon::ThreadPool,
    },
}

/// Element-parallel execution strategy for a single pass.
pub struct Backend {
    mode: Mode,
}

impl Backend {
    /// Single-threaded backend.
    pub fn serial() -> Backend {
        Backend { mode: Mode::Serial }
    }

    /// Backend with a dedicated pool of `workers` threads.
    pub fn parallel(workers: usize) -> Result<Backend> {
        if workers == 0 {
            return Err(Error::BadBackendSpec("parallel:0".to_string()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::BackendInit(e.to_string()))?;
        Ok(Backend {
            mode: Mode::Parallel { workers, pool },
        })
    }

    /// Parallel backend sized to the hardware concurrency.
    pub fn parallel_default() -> Result<Backend> {
        Backend::parallel(hardware_workers())
    }

    /// Parses and builds from a selection string `serial | parallel[:k]`.
    pub fn from_spec(spec: &str) -> Result<Backend> {
        spec.parse::<BackendChoice>()?.build()
    }

    pub fn name(&self) -> &'static str {
        match self.mode {
            Mode::Serial => "serial",
            Mode::Parallel { .. } => "parallel",
        }
    }

    /// Worker count; 1 for the serial backend.
    pub fn parallelism(&self) -> usize {
        match self.mode {
            Mode::Serial => 1,
            Mode::Parallel { workers, .. } => workers,
        }
    }

    fn apply<P: Real>(&self, kernel: &Kernel<'_, P>, input: &Buffer2D<P>, out: &mut Buffer2D<P>) {
        let width = out.width();
        match &self.mode {
            Mode::Serial => {
                for (row, line) in out.as_mut_slice().chunks_mut(width).enumerate() {
                    kernel.fill_row(input, row, line);
                }
            }
            Mode::Parallel { pool, .. } => pool.install(|| {
                out.as_mut_slice()
                    .par_chunks_mut(width)
                    .enumerate()
                    .for_each(|(row, line)| kernel.fill_row(input, row, line));
            }),
        }
    }
}

impl fmt::Debug for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Backend")
            .field("name", &self.name())
            .field("parallelism", &self.parallelism())
            .finish()
    }
}

/// Number of workers the default parallel backend uses.
pub fn hardware_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// What one executed pass did, with wall time and elements written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TracedPass {
    Scramble { axis: Axis },
    Butterfly { axis: Axis, stage: u32 },
    Conjugate,
    Scale,
}

impl fmt::Display for TracedPass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TracedPass::Scramble { axis } => write!(f, "scramble {axis}"),
            TracedPass::Butterfly { axis, stage } => write!(f, "butterfly {axis} stage {stage}"),
            TracedPass::Conjugate => write!(f, "conjugate"),
            TracedPass::Scale => write!(f, "scale"),
        }
    }
}

/// Timing record for one executed pass.
#[derive(Clone, Copy, Debug)]
pub struct PassTrace {
    pub pass: TracedPass,
    pub micros: u64,
    pub elements: u64,
}

/// Two same-shaped buffers alternating read/write roles between passes.
struct PingPong<P: Real> {
    front: Buffer2D<P>,
    back: Buffer2D<P>,
    swaps: usize,
}

impl<P: Real> PingPong<P> {
    fn new(front: Buffer2D<P>) -> Self {
        let back = Buffer2D::zeros(front.width(), front.height());
        PingPong {
            front,
            back,
            swaps: 0,
        }
    }

    fn split(&mut self) -> (&Buffer2D<P>, &mut Buffer2D<P>) {
        (&self.front, &mut self.back)
    }

    fn swap(&mut self) {
        std::mem::swap(&mut self.front, &mut self.back);
        self.swaps += 1;
    }
}

/// Executes the plan on `input` and returns the transformed buffer.
pub fn run_plan<P: Real>(
    plan: &FftPlan<P>,
    input: &Buffer2D<P>,
    direction: Direction,
    backend: &Backend,
) -> Result<Buffer2D<P>> {
    execute(plan, input, direction, backend).map(|(out, _)| out)
}

/// Like [`run_plan`], also returning one timing record per executed pass.
/// The output buffer is bit-identical to the untraced run.
pub fn run_plan_traced<P: Real>(
    plan: &FftPlan<P>,
    input: &Buffer2D<P>,
    direction: Direction,
    backend: &Backend,
) -> Result<(Buffer2D<P>, Vec<PassTrace>)> {
    execute(plan, input, direction, backend)
}

fn execute<P: Real>(
    plan: &FftPlan<P>,
    input: &Buffer2D<P>,
    direction: Direction,
    backend: &Backend,
) -> Result<(Buffer2D<P>, Vec<PassTrace>)> {
    if (input.width(), input.height()) != (plan.width(), plan.height()) {
        return Err(Error::ShapeMismatch {
            what: "input buffer",
            expected: (plan.width(), plan.height()),
            actual: (input.width(), input.height()),
        });
    }
    if let Some((row, col)) = input.first_non_finite() {
        return Err(Error::NonFinite { row, col });
    }
    // A 1x1 plan has an empty schedule and both directions are the identity.
    if plan.pass_count() == 0 {
        return Ok((input.clone(), Vec::new()));
    }

    let mut state = PingPong::new(input.clone());
    let mut trace = Vec::with_capacity(plan.pass_count() + 3);
    let elements = (plan.width() * plan.height()) as u64;

    let mut run_pass = |state: &mut PingPong<P>, kernel: Kernel<'_, P>, traced: TracedPass| {
        let started = Instant::now();
        let (front, back) = state.split();
        backend.apply(&kernel, front, back);
        state.swap();
        trace.push(PassTrace {
            pass: traced,
            micros: started.elapsed().as_micros() as u64,
            elements,
        });
    };

    if direction == Direction::Inverse {
        run_pass(&mut state, Kernel::Conjugate, TracedPass::Conjugate);
    }
    for pass in plan.passes() {
        let kernel = Kernel::from_pass(pass);
        kernel.validate(plan.width(), plan.height())?;
        let traced = match pass.stage() {
            None => TracedPass::Scramble { axis: pass.axis() },
            Some(stage) => TracedPass::Butterfly {
                axis: pass.axis(),
                stage,
            },
        };
        run_pass(&mut state, kernel, traced);
    }
    if direction == Direction::Inverse {
        run_pass(&mut state, Kernel::Conjugate, TracedPass::Conjugate);
        let factor = P::from_f64(1.0 / (plan.width() * plan.height()) as f64);
        run_pass(&mut state, Kernel::Scale { factor }, TracedPass::Scale);
    }

    debug_assert_eq!(state.swaps, trace.len());
    Ok((state.front, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Complex;
    use crate::plan::build_plan;

    fn row_buffer(values: &[f64]) -> Buffer2D<f64> {
        Buffer2D::from_real_rows(&[values.to_vec()]).unwrap()
    }

    #[test]
    fn backend_spec_parsing() {
        assert_eq!("serial".parse::<BackendChoice>().unwrap(), BackendChoice::Serial);
        assert_eq!(
            "parallel".parse::<BackendChoice>().unwrap(),
            BackendChoice::Parallel { workers: None }
        );
        assert_eq!(
            "parallel:4".parse::<BackendChoice>().unwrap(),
            BackendChoice::Parallel { workers: Some(4) }
        );
        assert!("parallel:0".parse::<BackendChoice>().is_err());
        assert!("parallel:x".parse::<BackendChoice>().is_err());
        assert!("gpu".parse::<BackendChoice>().is_err());
        assert!("Serial".parse::<BackendChoice>().is_err());
    }

    #[test]
    fn backend_reports_name_and_parallelism() {
        let serial = Backend::serial();
        assert_eq!((serial.name(), serial.parallelism()), ("serial", 1));
        let parallel = Backend::parallel(3).unwrap();
        assert_eq!((parallel.name(), parallel.parallelism()), ("parallel", 3));
    }

    #[test]
    fn one_by_one_plan_is_identity_with_empty_trace() {
        let plan = build_plan::<f64>(1, 1).unwrap();
        let input = row_buffer(&[42.0]);
        let backend = Backend::serial();
        for direction in [Direction::Forward, Direction::Inverse] {
            let (out, trace) = run_plan_traced(&plan, &input, direction, &backend).unwrap();
            assert_eq!(out, input);
            assert!(trace.is_empty());
        }
    }

    #[test]
    fn forward_four_point_row_matches_direct_dft() {
        let plan = build_plan::<f64>(4, 1).unwrap();
        let input = row_buffer(&[1.0, 2.0, 3.0, 4.0]);
        let out = run_plan(&plan, &input, Direction::Forward, &Backend::serial()).unwrap();
        let expected = [
            Complex::new(10.0, 0.0),
            Complex::new(-2.0, 2.0),
            Complex::new(-2.0, 0.0),
            Complex::new(-2.0, -2.0),
        ];
        for (k, want) in expected.iter().enumerate() {
            let got = out.get(0, k);
            assert!(
                (got - *want).norm() < 1e-12,
                "k={k} got={got} want={want}"
            );
        }
    }

    #[test]
    fn constant_image_concentrates_at_dc() {
        let plan = build_plan::<f64>(2, 2).unwrap();
        let input =
            Buffer2D::from_real_rows(&[vec![3.0, 3.0], vec![3.0, 3.0]]).unwrap();
        let out = run_plan(&plan, &input, Direction::Forward, &Backend::serial()).unwrap();
        assert!((out.get(0, 0) - Complex::new(12.0, 0.0)).norm() < 1e-12);
        for (r, c) in [(0, 1), (1, 0), (1, 1)] {
            assert!(out.get(r, c).norm() < 1e-12, "at ({r},{c})");
        }
    }

    #[test]
    fn trace_covers_every_scheduled_pass() {
        let plan = build_plan::<f32>(256, 256).unwrap();
        let input = Buffer2D::<f32>::zeros(256, 256);
        let backend = Backend::serial();
        let (_, trace) =
            run_plan_traced(&plan, &input, Direction::Forward, &backend).unwrap();
        assert_eq!(trace.len(), 18);
        let total: u64 = trace.iter().map(|t| t.elements).sum();
        assert_eq!(total, 18 * 256 * 256);
    }

    #[test]
    fn inverse_trace_adds_conjugate_and_scale_passes() {
        let plan = build_plan::<f64>(4, 1).unwrap();
        let input = row_buffer(&[1.0, 2.0, 3.0, 4.0]);
        let (_, trace) =
            run_plan_traced(&plan, &input, Direction::Inverse, &Backend::serial()).unwrap();
        assert_eq!(trace.len(), 3 + 3);
        assert_eq!(trace[0].pass, TracedPass::Conjugate);
        assert_eq!(trace[4].pass, TracedPass::Conjugate);
        assert_eq!(trace[5].pass, TracedPass::Scale);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let plan = build_plan::<f64>(4, 4).unwrap();
        let input = row_buffer(&[1.0, 2.0, 3.0, 4.0]);
        let err = run_plan(&plan, &input, Direction::Forward, &Backend::serial()).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let plan = build_plan::<f64>(2, 1).unwrap();
        let mut input = row_buffer(&[1.0, 2.0]);
        input.set(0, 1, Complex::new(f64::INFINITY, 0.0));
        let err = run_plan(&plan, &input, Direction::Forward, &Backend::serial()).unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 0, col: 1 });
    }

    #[test]
    fn ping_pong_swaps_once_per_pass() {
        let mut state = PingPong::new(Buffer2D::<f64>::zeros(2, 2));
        assert_eq!(state.swaps, 0);
        state.swap();
        state.swap();
        assert_eq!(state.swaps, 2);
        assert_eq!(
            (state.front.width(), state.front.height()),
            (state.back.width(), state.back.height())
        );
    }
}
