//! Row-major 2D complex buffer, the in-memory stand-in for the image texture.

use std::ops::Index;

use crate::complex::{Complex, Real};
use crate::error::{Error, Result};

/// Row-major grid of complex samples. Element (row, col) lives at linear
/// index `row * width + col`.
#[derive(Clone, Debug, PartialEq)]
pub struct Buffer2D<P: Real> {
    width: usize,
    height: usize,
    data: Vec<Complex<P>>,
}

impl<P: Real> Buffer2D<P> {
    /// All-zero buffer. Panics if either dimension is zero.
    pub fn zeros(width: usize, height: usize) -> Self {
        assert!(width > 0 && height > 0, "buffer dimensions must be positive");
        Buffer2D {
            width,
            height,
            data: vec![Complex::zero(); width * height],
        }
    }

    /// Wraps an existing row-major sample vector.
    pub fn from_complex(width: usize, height: usize, data: Vec<Complex<P>>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Empty);
        }
        if data.len() != width * height {
            return Err(Error::ShapeMismatch {
                what: "sample vector",
                expected: (width, height),
                actual: (data.len(), 1),
            });
        }
        Ok(Buffer2D {
            width,
            height,
            data,
        })
    }

    /// Builds a buffer from a rectangular grid of real samples; each value v
    /// becomes the complex sample (v, 0).
    pub fn from_real_rows(rows: &[Vec<P>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Empty);
        }
        let width = rows[0].len();
        let mut data = Vec::with_capacity(width * rows.len());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::RaggedGrid {
                    row: r,
                    expected: width,
                    actual: row.len(),
                });
            }
            data.extend(row.iter().map(|&v| Complex::new(v, P::zero())));
        }
        Ok(Buffer2D {
            width,
            height: rows.len(),
            data,
        })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<P> {
        self.data[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex<P>) {
        self.data[row * self.width + col] = value;
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[Complex<P>] {
        let start = row * self.width;
        &self.data[start..start + self.width]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, row: usize) -> &mut [Complex<P>] {
        let start = row * self.width;
        &mut self.data[start..start + self.width]
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex<P>] {
        &self.data
    }

    #[inline]
    pub(crate) fn as_mut_slice(&mut self) -> &mut [Complex<P>] {
        &mut self.data
    }

    /// Position of the first NaN or infinite sample, if any.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|z| !z.is_finite())
            .map(|i| (i / self.width, i % self.width))
    }

    /// Converts every sample to another precision.
    pub fn to_precision<Q: Real>(&self) -> Buffer2D<Q> {
        Buffer2D {
            width: self.width,
            height: self.height,
            data: self
                .data
                .iter()
                .map(|z| Complex::from_f64(z.widen()))
                .collect(),
        }
    }
}

impl<P: Real> Index<(usize, usize)> for Buffer2D<P> {
    type Output = Complex<P>;
    #[inline]
    fn index(&self, (row, col): (usize, usize)) -> &Complex<P> {
        &self.data[row * self.width + col]
    }
}
