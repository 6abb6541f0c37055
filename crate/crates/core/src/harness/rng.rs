//! Seeded Gaussian streams. ChaCha20 with independent stream ids keeps the
//! generated matrices identical across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Stream id of the diagonal of `B`.
pub const STREAM_B: u64 = 1;
/// Stream id of the probe matrix `V`.
pub const STREAM_V: u64 = 2;

pub struct GaussianStream {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        GaussianStream { rng, spare: None }
    }

    /// Standard normal sample by the Box–Muller transform.
    pub fn next_standard(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1] keeps the logarithm finite
        let u1 = 1.0 - self.rng.random::<f64>();
        let u2: f64 = self.rng.random();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }

    pub fn next_normal(&mut self, mean: f64, std_dev: f64) -> f64 {
        mean + std_dev * self.next_standard()
    }
}
