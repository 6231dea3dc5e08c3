//! Brute-force O(N²) reference transform, always in double precision. This is
//! the ground truth the fast path is checked against; it shares nothing with
//! the staged pipeline except the sample types.

use std::f64::consts::TAU;

use crate::buffer::Buffer2D;
use crate::complex::{Complex, Real};
use crate::error::{Error, Result};
use crate::executor::Direction;

/// Direct evaluation of X(k) = Σ x(n)·exp(∓2πi·nk/N); the inverse sums with
/// positive exponent and divides by N. Accepts any length ≥ 1.
pub fn naive_dft_1d(input: &[Complex<f64>], direction: Direction) -> Result<Vec<Complex<f64>>> {
    if input.is_empty() {
        return Err(Error::Empty);
    }
    let n = input.len();
    let sign = match direction {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    // One rotation per residue class; exponents reduce mod n exactly.
    let ring: Vec<Complex<f64>> = (0..n)
        .map(|t| {
            let (sin, cos) = (sign * TAU * t as f64 / n as f64).sin_cos();
            Complex::new(cos, sin)
        })
        .collect();
    let scale = 1.0 / n as f64;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = Complex::zero();
        for (idx, &x) in input.iter().enumerate() {
            acc = acc + x * ring[(idx * k) % n];
        }
        if direction == Direction::Inverse {
            acc = acc.scale(scale);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Separable 2D reference: 1D transform of every row, then of every column.
pub fn naive_dft_2d(input: &Buffer2D<f64>, direction: Direction) -> Result<Buffer2D<f64>> {
    let (w, h) = (input.width(), input.height());
    let mut out = input.clone();
    for r in 0..h {
        let line = naive_dft_1d(out.row(r), direction)?;
        out.row_mut(r).copy_from_slice(&line);
    }
    for c in 0..w {
        let col: Vec<Complex<f64>> = (0..h).map(|r| out.get(r, c)).collect();
        let line = naive_dft_1d(&col, direction)?;
        for (r, z) in line.into_iter().enumerate() {
            out.set(r, c, z);
        }
    }
    Ok(out)
}

/// Largest per-element distance sqrt((Δre)² + (Δim)²) between two buffers of
/// equal shape, evaluated in double precision.
pub fn max_abs_error<P: Real, Q: Real>(a: &Buffer2D<P>, b: &Buffer2D<Q>) -> Result<f64> {
    if (a.width(), a.height()) != (b.width(), b.height()) {
        return Err(Error::ShapeMismatch {
            what: "compared buffers",
            expected: (a.width(), a.height()),
            actual: (b.width(), b.height()),
        });
    }
    Ok(a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x.widen() - y.widen()).norm())
        .fold(0.0, f64::max))
}
