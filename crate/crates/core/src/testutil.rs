use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::{Scalar, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rationals `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 3`.
pub fn scalar(r: &mut impl Rng) -> Scalar {
    Scalar::new(r.gen_range(-5..=5), r.gen_range(1..=3))
}

pub fn vector(r: &mut impl Rng, n: usize) -> Vector {
    (0..n).map(|_| scalar(r)).collect()
}
