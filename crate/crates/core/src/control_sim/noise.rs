use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Seeded Gaussian source: ChaCha8 seeded with `seed_from_u64`, sampled
/// through `rand_distr::Normal`. A zero sigma consumes no randomness.
#[derive(Debug, Clone)]
pub struct NoiseSource {
    rng: ChaCha8Rng,
}

impl NoiseSource {
    pub fn new(rng: ChaCha8Rng) -> Self {
        Self { rng }
    }

    pub fn gaussian(&mut self, sigma: f64) -> f64 {
        if sigma > 0.0 {
            Normal::new(0.0, sigma).expect("sigma is positive and finite").sample(&mut self.rng)
        } else {
            0.0
        }
    }
}
