//! Seeded random draws. Each sample index gets its own ChaCha stream so that
//! batch results do not depend on how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linop::Vector;

/// Seed used when the caller does not provide one.
pub const DEFAULT_SEED: u64 = 0x5eed_0c70_2025;

/// Independent generator for sample `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    Vector::from_iterator(dim, (0..dim).map(|_| StandardNormal.sample(rng)))
}

/// Uniform direction on the Euclidean unit sphere of `R^dim`.
pub fn unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    loop {
        let v = gaussian_vector(rng, dim);
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}
