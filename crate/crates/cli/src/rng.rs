//! Deterministic random image generation, reproducible across machines and
//! languages.
//!
//! The generator is the 64-bit linear congruential recurrence
//! `state = state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`
//! (Knuth's MMIX parameters). Each draw advances the state once and returns
//! the new state; a gray pixel is the top byte, `state >> 56`.
//!
//! For size w x h at trial t with user seed s, the stream is seeded with
//! `s XOR w*0x9E3779B97F4A7C15 XOR h*0xC2B2AE3D27D4EB4F XOR t*0x165667B19E3779F9`
//! (wrapping multiplies), so every (size, trial) pair draws an independent
//! image while remaining a pure function of the seed.

use passfft::GrayImage;

pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    pub fn next_pixel(&mut self) -> u8 {
        (self.next_u64() >> 56) as u8
    }
}

/// Stream for one (seed, size, trial) combination.
pub fn image_stream(seed: u64, width: usize, height: usize, trial: u32) -> Lcg64 {
    let mixed = seed
        ^ (width as u64).wrapping_mul(0x9E3779B97F4A7C15)
        ^ (height as u64).wrapping_mul(0xC2B2AE3D27D4EB4F)
        ^ u64::from(trial).wrapping_mul(0x165667B19E3779F9);
    Lcg64::new(mixed)
}

/// Random grayscale image with pixels uniform in [0, 255].
pub fn random_image(seed: u64, width: usize, height: usize, trial: u32) -> GrayImage {
    let mut rng = image_stream(seed, width, height, trial);
    let pixels = (0..width * height).map(|_| rng.next_pixel()).collect();
    GrayImage::new(width, height, pixels).expect("dimensions are positive")
}
