//! Complex samples and the precision parameter of the whole pipeline.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Float;

/// Floating-point sample type every stage of the pipeline is generic over.
///
/// Exactly two instantiations exist: `f32`, emulating the single-precision
/// GPU path, and `f64`, the reference precision used by the oracle.
pub trait Real:
    Float + Default + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
    /// Parses a decimal written by `Display`, round-tripping exactly.
    fn parse(text: &str) -> Option<Self>;
}

impl Real for f32 {
    #[inline]
    fn from_f64(v: f64) -> f32 {
        v as f32
    }
    #[inline]
    fn to_f64(self) -> f64 {
        f64::from(self)
    }
    fn parse(text: &str) -> Option<f32> {
        text.parse().ok()
    }
}

impl Real for f64 {
    #[inline]
    fn from_f64(v: f64) -> f64 {
        v
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    fn parse(text: &str) -> Option<f64> {
        text.parse().ok()
    }
}

/// A complex sample stored as an interleaved (re, im) pair, the two channels
/// every pass reads and writes.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Complex<P> {
    pub re: P,
    pub im: P,
}

impl<P: Real> Complex<P> {
    #[inline]
    pub fn new(re: P, im: P) -> Self {
        Complex { re, im }
    }

    #[inline]
    pub fn zero() -> Self {
        Complex::new(P::zero(), P::zero())
    }

    #[inline]
    pub fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }

    #[inline]
    pub fn scale(self, factor: P) -> Self {
        Complex::new(self.re * factor, self.im * factor)
    }

    #[inline]
    pub fn norm_sqr(self) -> P {
        self.re * self.re + self.im * self.im
    }

    /// Magnitude sqrt(re² + im²).
    #[inline]
    pub fn norm(self) -> P {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    #[inline]
    pub fn widen(self) -> Complex<f64> {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn from_f64(value: Complex<f64>) -> Self {
        Complex::new(P::from_f64(value.re), P::from_f64(value.im))
    }
}

impl<P: Real> Add for Complex<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Complex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<P: Real> Sub for Complex<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Complex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<P: Real> Mul for Complex<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Complex::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl<P: Real> Neg for Complex<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Complex::new(-self.re, -self.im)
    }
}

impl<P: Real> fmt::Display for Complex<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}
