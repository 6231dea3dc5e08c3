//! Plan construction: validates dimensions and precomputes every table the
//! passes will gather from (bit-reversal permutations per axis, one butterfly
//! descriptor table per stage) into an immutable pass schedule.

use std::f64::consts::TAU;
use std::fmt;

use crate::complex::{Complex, Real};
use crate::error::{Error, Result};

/// Default per-axis dimension cap, standing in for the texture size limit of
/// the original GPU substrate.
pub const DEFAULT_MAX_DIM: usize = 1 << 13;

/// The direction a pass sweeps lines along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Cols,
}

impl Axis {
    /// Buffer extent along this axis (row length for `Rows`, column length
    /// for `Cols`).
    #[inline]
    pub fn extent(self, width: usize, height: usize) -> usize {
        match self {
            Axis::Rows => width,
            Axis::Cols => height,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Axis::Rows => "rows",
            Axis::Cols => "cols",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Reverses the low `bits` bits of `k`.
pub fn bit_reverse(k: usize, bits: u32) -> Result<usize> {
    if bits == 0 || bits >= usize::BITS {
        return Err(Error::Domain {
            what: "bit width",
            value: bits as usize,
            bound: usize::BITS as usize,
        });
    }
    let n = 1usize << bits;
    if k >= n {
        return Err(Error::Domain {
            what: "index to bit-reverse",
            value: k,
            bound: n,
        });
    }
    Ok(k.reverse_bits() >> (usize::BITS - bits))
}

/// Bit-reversal permutation for one axis, gathered by the scramble pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrambleTable {
    index: Vec<usize>,
}

impl ScrambleTable {
    #[inline]
    pub fn len(&self) -> usize {
        self.index.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    #[inline]
    pub fn indices(&self) -> &[usize] {
        &self.index
    }
}

/// Builds the bit-reversal permutation for a power-of-two length.
pub fn build_scramble_table(n: usize) -> Result<ScrambleTable> {
    require_power_of_two(n, "scramble length")?;
    if n == 1 {
        return Ok(ScrambleTable { index: vec![0] });
    }
    let bits = n.trailing_zeros();
    let index = (0..n)
        .map(|k| bit_reverse(k, bits))
        .collect::<Result<Vec<usize>>>()?;
    Ok(ScrambleTable { index })
}

/// Unit-magnitude rotation factor exp(-2πi·j/m).
pub fn twiddle<P: Real>(m: usize, j: usize) -> Result<Complex<P>> {
    if m == 0 {
        return Err(Error::Domain {
            what: "twiddle modulus",
            value: 0,
            bound: 1,
        });
    }
    if j >= m {
        return Err(Error::Domain {
            what: "twiddle exponent",
            value: j,
            bound: m,
        });
    }
    // Angles are evaluated in f64 and narrowed afterwards, so the single
    // precision tables carry correctly rounded coefficients.
    let theta = -TAU * (j as f64) / (m as f64);
    let (sin, cos) = theta.sin_cos();
    Ok(Complex::from_f64(Complex::new(cos, sin)))
}

/// One butterfly gather: `out[k] = in[base] + weight * in[partner]`.
///
/// The subtracting half of the classic butterfly is represented by a negated
/// weight, which keeps the kernel a single branch-free formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Butterfly<P: Real> {
    pub base: usize,
    pub partner: usize,
    pub weight: Complex<P>,
}

/// Per-stage table holding one butterfly descriptor per output element.
#[derive(Clone, Debug, PartialEq)]
pub struct StageTable<P: Real> {
    stage: u32,
    entries: Vec<Butterfly<P>>,
}

impl<P: Real> StageTable<P> {
    #[inline]
    pub fn stage(&self) -> u32 {
        self.stage
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[Butterfly<P>] {
        &self.entries
    }
}

/// Builds the descriptor table for one butterfly stage of an `n`-point
/// transform. Stage `s` combines blocks of `2^s` elements.
pub fn build_stage_table<P: Real>(n: usize, stage: u32) -> Result<StageTable<P>> {
    require_power_of_two(n, "stage length")?;
    let levels = n.trailing_zeros();
    if stage == 0 || stage > levels {
        return Err(Error::Domain {
            what: "butterfly stage",
            value: stage as usize,
            bound: levels as usize,
        });
    }
    let block = 1usize << stage;
    let half = block >> 1;
    let mut entries = Vec::with_capacity(n);
    for k in 0..n {
        let j = k & (block - 1);
        let entry = if j < half {
            Butterfly {
                base: k,
                partner: k + half,
                weight: twiddle(block, j)?,
            }
        } else {
            Butterfly {
                base: k - half,
                partner: k,
                weight: -twiddle(block, j - half)?,
            }
        };
        entries.push(entry);
    }
    Ok(StageTable { stage, entries })
}

/// The table a pass gathers from.
#[derive(Clone, Debug)]
pub enum PassTable<P: Real> {
    Scramble(ScrambleTable),
    Butterfly(StageTable<P>),
}

/// One data-parallel sweep of the schedule.
#[derive(Clone, Debug)]
pub struct PassDescriptor<P: Real> {
    axis: Axis,
    table: PassTable<P>,
}

impl<P: Real> PassDescriptor<P> {
    #[inline]
    pub fn axis(&self) -> Axis {
        self.axis
    }

    #[inline]
    pub fn table(&self) -> &PassTable<P> {
        &self.table
    }

    #[inline]
    pub fn is_butterfly(&self) -> bool {
        matches!(self.table, PassTable::Butterfly(_))
    }

    /// Stage number for butterfly passes, `None` for scrambles.
    #[inline]
    pub fn stage(&self) -> Option<u32> {
        match &self.table {
            PassTable::Scramble(_) => None,
            PassTable::Butterfly(t) => Some(t.stage()),
        }
    }

    pub fn kind_label(&self) -> &'static str {
        match &self.table {
            PassTable::Scramble(_) => "scramble",
            PassTable::Butterfly(_) => "butterfly",
        }
    }
}

/// Validated dimensions plus the full precomputed pass schedule. Immutable
/// after construction; safe to share across any number of executions.
#[derive(Clone, Debug)]
pub struct FftPlan<P: Real> {
    width: usize,
    height: usize,
    passes: Vec<PassDescriptor<P>>,
}

impl<P: Real> FftPlan<P> {
    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn passes(&self) -> &[PassDescriptor<P>] {
        &self.passes
    }

    #[inline]
    pub fn pass_count(&self) -> usize {
        self.passes.len()
    }

    pub fn butterfly_pass_count(&self) -> usize {
        self.passes.iter().filter(|p| p.is_butterfly()).count()
    }

    pub fn scramble_pass_count(&self) -> usize {
        self.passes.iter().filter(|p| !p.is_butterfly()).count()
    }
}

/// Builds a plan with the default dimension cap.
pub fn build_plan<P: Real>(width: usize, height: usize) -> Result<FftPlan<P>> {
    build_plan_with_max_dim(width, height, DEFAULT_MAX_DIM)
}

/// Builds a plan, capping each axis at `max_dim`.
///
/// Schedule order: scramble rows, butterfly rows stage 1..log2(width), then
/// the same along columns. Axes of length one contribute no passes.
pub fn build_plan_with_max_dim<P: Real>(
    width: usize,
    height: usize,
    max_dim: usize,
) -> Result<FftPlan<P>> {
    validate_axis(width, "width", max_dim)?;
    validate_axis(height, "height", max_dim)?;
    let mut passes = Vec::new();
    for (axis, n) in [(Axis::Rows, width), (Axis::Cols, height)] {
        if n == 1 {
            continue;
        }
        passes.push(PassDescriptor {
            axis,
            table: PassTable::Scramble(build_scramble_table(n)?),
        });
        for stage in 1..=n.trailing_zeros() {
            passes.push(PassDescriptor {
                axis,
                table: PassTable::Butterfly(build_stage_table(n, stage)?),
            });
        }
    }
    Ok(FftPlan {
        width,
        height,
        passes,
    })
}

/// Floating-point operation count of the full 2D transform, counting one
/// complex multiply plus one complex addition (2 ops) per butterfly.
pub fn count_operations(width: usize, height: usize) -> Result<u64> {
    require_power_of_two(width, "width")?;
    require_power_of_two(height, "height")?;
    let (w, h) = (width as u64, height as u64);
    let row_butterflies = h * (w / 2) * u64::from(width.trailing_zeros());
    let col_butterflies = w * (h / 2) * u64::from(height.trailing_zeros());
    Ok(2 * (row_butterflies + col_butterflies))
}

fn require_power_of_two(n: usize, what: &'static str) -> Result<()> {
    if n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::NotPowerOfTwo { what, len: n })
    }
}

fn validate_axis(len: usize, what: &'static str, max_dim: usize) -> Result<()> {
    require_power_of_two(len, what)?;
    if len > max_dim {
        return Err(Error::DimensionTooLarge {
            what,
            len,
            max: max_dim,
        });
    }
    Ok(())
}
