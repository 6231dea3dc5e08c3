//! Shared input generation for the criterion benchmarks.

use passfft::{Buffer2D, Complex, Real};

/// Deterministic pseudo-random buffer with samples in [0, 255], so repeated
/// benchmark runs measure identical work.
pub fn sample_buffer<P: Real>(width: usize, height: usize) -> Buffer2D<P> {
    let mut state = 0x9E3779B97F4A7C15u64 ^ ((width as u64) << 32 | height as u64);
    let data = (0..width * height)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let value = (state >> 56) as f64;
            Complex::new(P::from_f64(value), P::zero())
        })
        .collect();
    Buffer2D::from_complex(width, height, data).expect("dimensions are positive")
}
